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

#include "offload/model.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "offload/error.h"

namespace offload {
namespace {

void CheckComputationCost(double c, NodeId v, const char* field) {
  if (std::isnan(c) || c < 0.0) {
    throw Error(ErrorCode::kNegativeCost,
                "node " + std::to_string(v) + " has invalid " + field);
  }
}

void CheckFinite(double c, const std::string& what) {
  if (std::isnan(c) || c < 0.0) {
    throw Error(ErrorCode::kNegativeCost, what + " is negative or NaN");
  }
  if (std::isinf(c)) {
    throw Error(ErrorCode::kInvalidArgument, what + " must be finite");
  }
}

void BuildAdjacency(int n, const std::vector<Edge>& edges,
                    std::vector<int>& out_start, std::vector<int>& out_list,
                    std::vector<int>& in_start, std::vector<int>& in_list) {
  out_start.assign(n + 1, 0);
  in_start.assign(n + 1, 0);
  for (const Edge& e : edges) {
    ++out_start[e.src + 1];
    ++in_start[e.dst + 1];
  }
  for (int v = 0; v < n; ++v) {
    out_start[v + 1] += out_start[v];
    in_start[v + 1] += in_start[v];
  }
  out_list.resize(edges.size());
  in_list.resize(edges.size());
  std::vector<int> out_fill(out_start.begin(), out_start.end() - 1);
  std::vector<int> in_fill(in_start.begin(), in_start.end() - 1);
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    out_list[out_fill[edges[i].src]++] = i;
    in_list[in_fill[edges[i].dst]++] = i;
  }
}

}  // namespace

TaskGraph BuildGraph(std::string name, std::vector<NodeCost> nodes,
                     std::vector<Edge> edges, std::vector<Pin> pins) {
  const int n = static_cast<int>(nodes.size());
  if (pins.empty()) pins.assign(n, Pin::kFree);
  if (static_cast<int>(pins.size()) != n) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "pin list has " + std::to_string(pins.size()) +
                    " entries for " + std::to_string(n) + " nodes");
  }

  for (NodeId v = 0; v < n; ++v) {
    NodeCost& c = nodes[v];
    CheckComputationCost(c.w_edge, v, "w_edge");
    CheckComputationCost(c.w_cloud, v, "w_cloud");
    CheckFinite(c.transfer, "transfer of node " + std::to_string(v));
    const bool edge_inf = std::isinf(c.w_edge);
    const bool cloud_inf = std::isinf(c.w_cloud);
    if (edge_inf && cloud_inf) {
      throw Error(ErrorCode::kBothComputationCostsInfinite,
                  "node " + std::to_string(v));
    }
    if (cloud_inf) {
      if (pins[v] == Pin::kCloud) {
        throw Error(ErrorCode::kPinConflict,
                    "node " + std::to_string(v) +
                        " is pinned to cloud but w_cloud is infinite");
      }
      pins[v] = Pin::kEdge;
    } else if (edge_inf) {
      if (pins[v] == Pin::kEdge) {
        throw Error(ErrorCode::kPinConflict,
                    "node " + std::to_string(v) +
                        " is pinned to edge but w_edge is infinite");
      }
      pins[v] = Pin::kCloud;
    }
  }

  std::vector<Edge> kept;
  kept.reserve(edges.size());
  for (size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "edge " + std::to_string(i) + " (" + std::to_string(e.src) +
                      "->" + std::to_string(e.dst) + ") with " +
                      std::to_string(n) + " nodes");
    }
    const std::string what = "cost of edge " + std::to_string(i);
    CheckFinite(e.cost.ee, what);
    CheckFinite(e.cost.ec, what);
    CheckFinite(e.cost.ce, what);
    CheckFinite(e.cost.cc, what);
    if (e.src == e.dst) continue;  // self-loops cost nothing
    kept.push_back(e);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.src, a.dst) < std::pair(b.src, b.dst);
  });
  std::vector<Edge> merged;
  merged.reserve(kept.size());
  for (const Edge& e : kept) {
    if (!merged.empty() && merged.back().src == e.src &&
        merged.back().dst == e.dst) {
      merged.back().cost += e.cost;
    } else {
      merged.push_back(e);
    }
  }

  TaskGraph g;
  g.name_ = std::move(name);
  g.nodes_ = std::move(nodes);
  g.pins_ = std::move(pins);
  g.edges_ = std::move(merged);
  BuildAdjacency(n, g.edges_, g.out_start_, g.out_list_, g.in_start_,
                 g.in_list_);
  return g;
}

double TaskGraph::TotalFiniteCost() const {
  double total = 0.0;
  for (const NodeCost& c : nodes_) {
    if (std::isfinite(c.w_edge)) total += c.w_edge;
    if (std::isfinite(c.w_cloud)) total += c.w_cloud;
    total += c.transfer;
  }
  for (const Edge& e : edges_) {
    total += e.cost.ee + e.cost.ec + e.cost.ce + e.cost.cc;
  }
  return total;
}

TaskGraph TaskGraph::Scaled(double factor) const {
  std::vector<NodeCost> nodes = nodes_;
  for (NodeCost& c : nodes) {
    c.w_edge *= factor;
    c.w_cloud *= factor;
    c.transfer *= factor;
  }
  std::vector<Edge> edges = edges_;
  for (Edge& e : edges) e.cost = e.cost.Scaled(factor);
  return BuildGraph(name_, std::move(nodes), std::move(edges), pins_);
}

Partition Partition::FromCloudSet(std::vector<NodeId> cloud) {
  std::sort(cloud.begin(), cloud.end());
  cloud.erase(std::unique(cloud.begin(), cloud.end()), cloud.end());
  return Partition{std::move(cloud)};
}

std::vector<Side> Partition::Sides(int num_nodes) const {
  std::vector<Side> sides(num_nodes, Side::kEdge);
  for (NodeId v : cloud_set) sides[v] = Side::kCloud;
  return sides;
}

void ValidatePartition(const TaskGraph& g, const Partition& p) {
  const int n = g.num_nodes();
  std::vector<bool> in_cloud(n, false);
  for (NodeId v : p.cloud_set) {
    if (v < 0 || v >= n) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "cloud set member " + std::to_string(v));
    }
    in_cloud[v] = true;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (g.pin(v) == Pin::kEdge && in_cloud[v]) {
      throw Error(ErrorCode::kPinViolation,
                  "edge-pinned task " + std::to_string(v) + " in cloud set");
    }
    if (g.pin(v) == Pin::kCloud && !in_cloud[v]) {
      throw Error(ErrorCode::kPinViolation,
                  "cloud-pinned task " + std::to_string(v) + " on edge");
    }
  }
}

std::string_view InequalityName(Inequality which) {
  switch (which) {
    case Inequality::kCloudCloudLeEdgeCloud: return "l_cc<=l_ec";
    case Inequality::kCloudCloudLeCloudEdge: return "l_cc<=l_ce";
    case Inequality::kEdgeEdgeLeEdgeCloud: return "l_ee<=l_ec";
    case Inequality::kEdgeEdgeLeCloudEdge: return "l_ee<=l_ce";
  }
  return "?";
}

AssumptionReport CheckAssumption(const TaskGraph& g) {
  AssumptionReport report;
  bool intra_edge_ok = true;
  for (int i = 0; i < g.num_edges(); ++i) {
    const EdgeCost& l = g.edge(i).cost;
    auto require = [&](bool ok, Inequality which) {
      if (!ok) report.violations.push_back({i, which});
      return ok;
    };
    report.holds_weak &=
        require(l.cc <= l.ec, Inequality::kCloudCloudLeEdgeCloud);
    report.holds_weak &=
        require(l.cc <= l.ce, Inequality::kCloudCloudLeCloudEdge);
    intra_edge_ok &= require(l.ee <= l.ec, Inequality::kEdgeEdgeLeEdgeCloud);
    intra_edge_ok &= require(l.ee <= l.ce, Inequality::kEdgeEdgeLeCloudEdge);
    if (l.ee + l.cc > l.ec + l.ce) report.holds_submodular = false;
  }
  report.holds_strong = report.holds_weak && intra_edge_ok;
  return report;
}

}  // namespace offload
