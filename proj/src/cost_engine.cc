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

#include "offload/cost_engine.h"

#include <algorithm>
#include <string>

#include "offload/error.h"

namespace offload {

CostBreakdown TotalCost(const TaskGraph& g, const Partition& p) {
  ValidatePartition(g, p);
  const std::vector<Side> sides = p.Sides(g.num_nodes());
  CostBreakdown b;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const NodeCost& c = g.node(v);
    b.comp += sides[v] == Side::kEdge ? c.w_edge + c.transfer : c.w_cloud;
  }
  for (const Edge& e : g.edges()) {
    const Side s = sides[e.src];
    const Side t = sides[e.dst];
    const double l = e.cost.Select(s, t);
    if (s != t) {
      b.comm_inter += l;
    } else if (s == Side::kEdge) {
      b.comm_intra_edge += l;
    } else {
      b.comm_intra_cloud += l;
    }
  }
  b.total = b.comp + b.comm_inter + b.comm_intra_edge + b.comm_intra_cloud;
  return b;
}

double TotalCostOfSides(const TaskGraph& g, std::span<const Side> sides) {
  double total = 0.0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const NodeCost& c = g.node(v);
    total += sides[v] == Side::kEdge ? c.w_edge + c.transfer : c.w_cloud;
  }
  for (const Edge& e : g.edges()) {
    total += e.cost.Select(sides[e.src], sides[e.dst]);
  }
  return total;
}

OffloadObjective::OffloadObjective(const TaskGraph& g)
    : graph_(&g),
      ground_index_(g.num_nodes(), -1),
      base_sides_(g.num_nodes(), Side::kEdge) {
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    switch (g.pin(v)) {
      case Pin::kFree:
        ground_index_[v] = static_cast<int>(ground_set_.size());
        ground_set_.push_back(v);
        break;
      case Pin::kCloud:
        base_cloud_.push_back(v);
        base_sides_[v] = Side::kCloud;
        break;
      case Pin::kEdge:
        break;
    }
  }
  gamma_empty_ = TotalCostOfSides(g, base_sides_);
  tie_tolerance_ = kRelTol * std::max(1.0, g.TotalFiniteCost());
}

std::vector<Side> OffloadObjective::SidesFor(
    std::span<const NodeId> x) const {
  std::vector<Side> sides = base_sides_;
  for (NodeId v : x) {
    if (v < 0 || v >= graph_->num_nodes() || ground_index_[v] < 0) {
      throw Error(ErrorCode::kNotInGroundSet,
                  "task " + std::to_string(v) + " is not free");
    }
    sides[v] = Side::kCloud;
  }
  return sides;
}

double OffloadObjective::Gamma(std::span<const NodeId> x) const {
  return TotalCostOfSides(*graph_, SidesFor(x));
}

double OffloadObjective::Value(std::span<const NodeId> x) const {
  if (x.empty()) return 0.0;
  return Gamma(x) - gamma_empty_;
}

double OffloadObjective::Marginal(NodeId v, std::span<const Side> sides) const {
  const TaskGraph& g = *graph_;
  const NodeCost& c = g.node(v);
  double delta = c.w_cloud - c.w_edge - c.transfer;
  for (int e : g.out_edges(v)) {
    const Edge& arc = g.edge(e);
    const EdgeCost& l = arc.cost;
    delta += sides[arc.dst] == Side::kCloud ? l.cc - l.ec : l.ce - l.ee;
  }
  for (int e : g.in_edges(v)) {
    const Edge& arc = g.edge(e);
    const EdgeCost& l = arc.cost;
    delta += sides[arc.src] == Side::kCloud ? l.cc - l.ce : l.ec - l.ee;
  }
  return delta;
}

double OffloadObjective::Marginal(NodeId v, std::span<const NodeId> a) const {
  if (v < 0 || v >= graph_->num_nodes() || ground_index_[v] < 0) {
    throw Error(ErrorCode::kNotInGroundSet,
                "task " + std::to_string(v) + " is not free");
  }
  const std::vector<Side> sides = SidesFor(a);
  if (sides[v] == Side::kCloud) {
    throw Error(ErrorCode::kAlreadyInSet,
                "task " + std::to_string(v) + " already in the set");
  }
  return Marginal(v, sides);
}

bool PreferSubset(double f, std::span<const NodeId> set, double best_f,
                  std::span<const NodeId> best_set, double tol) {
  if (f < best_f - tol) return true;
  if (f > best_f + tol) return false;
  if (set.size() != best_set.size()) return set.size() < best_set.size();
  return std::lexicographical_compare(set.begin(), set.end(), best_set.begin(),
                                      best_set.end());
}

}  // namespace offload
