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

// Cost evaluation for offloading partitions.
//
// Gamma(Y) is the total cost when the tasks in Y run in the cloud and all
// others on the edge. The objective F(X) = Gamma(X + cloud pins) -
// Gamma(cloud pins) is defined over the free tasks only, so F(empty) = 0 and
// minimizing F over subsets of the free tasks minimizes total cost.

#ifndef OFFLOAD_COST_ENGINE_H_
#define OFFLOAD_COST_ENGINE_H_

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "offload/model.h"

namespace offload {

// Absolute and relative tolerance used for every float comparison.
inline constexpr double kAbsTol = 1e-6;
inline constexpr double kRelTol = 1e-9;

inline bool NearlyEqual(double a, double b, double abs_tol = kAbsTol,
                        double rel_tol = kRelTol) {
  return std::abs(a - b) <=
         abs_tol + rel_tol * std::max(std::abs(a), std::abs(b));
}

struct CostBreakdown {
  double comp = 0.0;
  double comm_inter = 0.0;
  double comm_intra_edge = 0.0;
  double comm_intra_cloud = 0.0;
  double total = 0.0;
};

// Throws kPinViolation / kIndexOutOfRange when p does not respect the pins.
CostBreakdown TotalCost(const TaskGraph& g, const Partition& p);

// Same as TotalCost(...).total for a full side assignment; no pin checks.
double TotalCostOfSides(const TaskGraph& g, std::span<const Side> sides);

class OffloadObjective {
 public:
  // Keeps a reference to `g`, which must outlive the objective.
  explicit OffloadObjective(const TaskGraph& g);

  const TaskGraph& graph() const { return *graph_; }
  // Free tasks in ascending id order.
  std::span<const NodeId> ground_set() const { return ground_set_; }
  int ground_size() const { return static_cast<int>(ground_set_.size()); }
  // Position of v in ground_set(), or -1.
  int ground_index(NodeId v) const { return ground_index_[v]; }
  std::span<const NodeId> base_cloud() const { return base_cloud_; }
  double gamma_empty() const { return gamma_empty_; }
  // Two F values closer than this are treated as equal when ranking sets.
  double tie_tolerance() const { return tie_tolerance_; }

  // Sides with only the cloud pins in the cloud.
  const std::vector<Side>& base_sides() const { return base_sides_; }

  // Side assignment for X (plus cloud pins). Throws kNotInGroundSet.
  std::vector<Side> SidesFor(std::span<const NodeId> x) const;

  double Gamma(std::span<const NodeId> x) const;
  // F(X); exactly 0.0 for the empty set.
  double Value(std::span<const NodeId> x) const;

  // F(A + v) - F(A) where A is described by `sides` (the side every node
  // occupies before the move) and v currently sits on the edge. O(deg v).
  double Marginal(NodeId v, std::span<const Side> sides) const;
  // Convenience overload; throws kNotInGroundSet or kAlreadyInSet.
  double Marginal(NodeId v, std::span<const NodeId> a) const;

 private:
  const TaskGraph* graph_;
  std::vector<NodeId> ground_set_;
  std::vector<int> ground_index_;
  std::vector<NodeId> base_cloud_;
  std::vector<Side> base_sides_;
  double gamma_empty_ = 0.0;
  double tie_tolerance_ = 0.0;
};

// Module-wide ordering of candidate minimizers: lower F wins; values within
// `tol` tie and are broken toward smaller cardinality, then the
// lexicographically smaller sorted id list.
bool PreferSubset(double f, std::span<const NodeId> set, double best_f,
                  std::span<const NodeId> best_set, double tol);

}  // namespace offload

#endif  // OFFLOAD_COST_ENGINE_H_
