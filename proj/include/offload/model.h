// Copyright 2026 The Offload Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Domain types for edge-cloud offloading instances.
//
// A TaskGraph is a directed graph whose nodes are tasks with a pair of
// computation costs (edge server, cloud server) plus a transfer overhead
// charged when the task runs on the edge, and whose arcs carry four
// communication costs selected by the (source side, target side) pair.

#ifndef OFFLOAD_MODEL_H_
#define OFFLOAD_MODEL_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace offload {

using NodeId = int32_t;

inline constexpr double kInfCost = std::numeric_limits<double>::infinity();

enum class Side : uint8_t { kEdge = 0, kCloud = 1 };

enum class Pin : uint8_t { kFree = 0, kEdge = 1, kCloud = 2 };

struct NodeCost {
  double w_edge = 0.0;
  double w_cloud = 0.0;  // may be kInfCost; the node is then pinned to edge
  double transfer = 0.0;

  friend bool operator==(const NodeCost&, const NodeCost&) = default;
};

// Communication cost of one directed arc (i, j), indexed by where i and j
// execute: ee = (edge, edge), ec = (edge, cloud), ce = (cloud, edge),
// cc = (cloud, cloud).
struct EdgeCost {
  double ee = 0.0;
  double ec = 0.0;
  double ce = 0.0;
  double cc = 0.0;

  double Select(Side src, Side dst) const {
    if (src == Side::kEdge) return dst == Side::kEdge ? ee : ec;
    return dst == Side::kEdge ? ce : cc;
  }

  EdgeCost& operator+=(const EdgeCost& o) {
    ee += o.ee;
    ec += o.ec;
    ce += o.ce;
    cc += o.cc;
    return *this;
  }
  EdgeCost Scaled(double factor) const {
    return {ee * factor, ec * factor, ce * factor, cc * factor};
  }

  friend bool operator==(const EdgeCost&, const EdgeCost&) = default;
};

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  EdgeCost cost;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Immutable after construction; safe to share read-only across threads.
// Edges are stored sorted by (src, dst) with parallel arcs merged.
class TaskGraph {
 public:
  TaskGraph() = default;

  const std::string& name() const { return name_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const NodeCost& node(NodeId v) const { return nodes_[v]; }
  const std::vector<NodeCost>& nodes() const { return nodes_; }
  Pin pin(NodeId v) const { return pins_[v]; }
  const std::vector<Pin>& pins() const { return pins_; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Indices into edges() of arcs leaving / entering v.
  std::span<const int> out_edges(NodeId v) const {
    return {out_list_.data() + out_start_[v],
            out_list_.data() + out_start_[v + 1]};
  }
  std::span<const int> in_edges(NodeId v) const {
    return {in_list_.data() + in_start_[v], in_list_.data() + in_start_[v + 1]};
  }
  int degree(NodeId v) const {
    return static_cast<int>(out_edges(v).size() + in_edges(v).size());
  }

  // Sum of every finite cost in the instance.
  double TotalFiniteCost() const;

  // Copy with every node and edge cost multiplied by `factor` (> 0).
  TaskGraph Scaled(double factor) const;

  friend bool operator==(const TaskGraph& a, const TaskGraph& b) {
    return a.name_ == b.name_ && a.nodes_ == b.nodes_ && a.pins_ == b.pins_ &&
           a.edges_ == b.edges_;
  }

 private:
  friend TaskGraph BuildGraph(std::string name, std::vector<NodeCost> nodes,
                              std::vector<Edge> edges, std::vector<Pin> pins);

  std::string name_;
  std::vector<NodeCost> nodes_;
  std::vector<Pin> pins_;
  std::vector<Edge> edges_;
  std::vector<int> out_start_, out_list_;
  std::vector<int> in_start_, in_list_;
};

// Validates and normalizes raw input: drops self-loops, merges parallel arcs
// by componentwise sum, and turns an infinite computation cost into the
// matching pin. `pins` may be empty (all free).
//
// Throws Error with kIndexOutOfRange, kNegativeCost,
// kBothComputationCostsInfinite or kPinConflict.
TaskGraph BuildGraph(std::string name, std::vector<NodeCost> nodes,
                     std::vector<Edge> edges, std::vector<Pin> pins = {});

// Tasks executing in the cloud. Always sorted and duplicate free.
struct Partition {
  std::vector<NodeId> cloud_set;

  static Partition FromCloudSet(std::vector<NodeId> cloud);
  std::vector<Side> Sides(int num_nodes) const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

// Throws kIndexOutOfRange or kPinViolation.
void ValidatePartition(const TaskGraph& g, const Partition& p);

enum class Inequality : uint8_t {
  kCloudCloudLeEdgeCloud,  // l_cc <= l_ec
  kCloudCloudLeCloudEdge,  // l_cc <= l_ce
  kEdgeEdgeLeEdgeCloud,    // l_ee <= l_ec
  kEdgeEdgeLeCloudEdge,    // l_ee <= l_ce
};

std::string_view InequalityName(Inequality which);

struct AssumptionViolation {
  int edge = 0;
  Inequality which = Inequality::kCloudCloudLeEdgeCloud;
};

struct AssumptionReport {
  // l_cc <= l_ec and l_cc <= l_ce on every edge.
  bool holds_weak = true;
  // Additionally l_ee <= l_ec and l_ee <= l_ce. The solver certifies
  // optimality only under this form.
  bool holds_strong = true;
  // l_ee + l_cc <= l_ec + l_ce on every edge: the exact pairwise condition
  // under which the cost increment is submodular. Diagnostic only.
  bool holds_submodular = true;
  std::vector<AssumptionViolation> violations;
};

AssumptionReport CheckAssumption(const TaskGraph& g);

}  // namespace offload

#endif  // OFFLOAD_MODEL_H_
