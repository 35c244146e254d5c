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

// Comparison algorithms: a greedy single-flip local search and the s-t
// min-cut transform, which is exact only for homogeneous communication
// costs (l_ee = l_cc <= l_ec = l_ce on every arc).

#ifndef OFFLOAD_BASELINES_H_
#define OFFLOAD_BASELINES_H_

#include <vector>

#include "offload/model.h"
#include "offload/sfm_solver.h"

namespace offload {

// Residual-graph max-flow by FIFO preflow-push with the gap heuristic.
class FlowNetwork {
 public:
  explicit FlowNetwork(int num_nodes);

  int num_nodes() const { return static_cast<int>(adj_.size()); }
  // Capacity must be finite and >= 0.
  void AddArc(int from, int to, double capacity);

  double MaxFlow(int source, int sink);
  // Nodes reachable from `source` in the residual graph of the last MaxFlow.
  std::vector<bool> SourceSide(int source) const;
  // Sum of original capacities on arcs leaving `side`.
  double CutCapacity(const std::vector<bool>& side) const;

 private:
  struct Arc {
    int to;
    int rev;
    double capacity;
    double residual;
  };
  std::vector<std::vector<Arc>> adj_;
  double tol_ = 0.0;
};

// Local search from the all-edge assignment: repeatedly flips the free task
// whose move lowers total cost the most (by more than 1e-9), ties to the
// lowest id. Never certified.
SolveResult GreedyLocalSearch(const TaskGraph& g);

bool MincutApplicable(const TaskGraph& g);

struct MinCutDetail {
  double flow_value = 0.0;
  double cut_value = 0.0;  // recomputed from residual reachability
  double offset = 0.0;     // sum of same-side costs l_ee over all arcs
};

// Throws kNotApplicable when MincutApplicable(g) is false.
SolveResult SolveMincut(const TaskGraph& g, MinCutDetail* detail = nullptr);

}  // namespace offload

#endif  // OFFLOAD_BASELINES_H_
