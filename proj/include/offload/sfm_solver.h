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

// Exact minimization of the offloading cost increment F by Wolfe's
// minimum-norm-point algorithm over the base polytope of F.
//
// Linear optimization over the base polytope is Edmonds' greedy rule: for a
// permutation of the ground set, each coordinate is the marginal of its
// element given all earlier ones. The min-norm point x* of the polytope
// encodes a minimizer of F as {e : x*_e < 0}; with floating point we scan
// every prefix of the x-sorted order instead and keep the best.

#ifndef OFFLOAD_SFM_SOLVER_H_
#define OFFLOAD_SFM_SOLVER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "offload/cost_engine.h"
#include "offload/model.h"

namespace offload {

inline constexpr double kDefaultEps = 1e-10;

// A vertex of the base polytope. `coords` is indexed by ground-set position
// (OffloadObjective::ground_index), `perm` holds node ids.
struct BaseVertex {
  std::vector<double> coords;
  std::vector<NodeId> perm;
};

BaseVertex GreedyVertex(const OffloadObjective& obj,
                        std::span<const NodeId> perm);

enum class Termination {
  kWolfeGap,          // x.q >= x.x - tol for the greedy q of x's order
  kAffineDependence,  // new vertex lies in the corral's affine hull
  kStalled,           // new vertex dropped in its first minor cycle
  kIterationLimit,
};

std::string_view TerminationName(Termination t);

struct MinNormState {
  std::vector<double> point;
  std::vector<BaseVertex> corral;
  std::vector<double> lambdas;
  double eps = kDefaultEps;  // relative; absolute gap tolerance is eps*scale^2
  double scale = 1.0;        // running max(1, |F|) over evaluated prefixes
  int64_t major_iterations = 0;
  int64_t minor_iterations = 0;
  int64_t oracle_calls = 0;
  Termination termination = Termination::kWolfeGap;
  // |x|^2 after the initial vertex and after every major cycle.
  std::vector<double> norm_trace;

  bool iteration_limited() const {
    return termination == Termination::kIterationLimit;
  }
};

// Requires a non-empty ground set and eps > 0 (kInvalidArgument otherwise).
// `max_major` <= 0 selects the default limit of 10 * n^2 major cycles.
MinNormState MinNormPoint(const OffloadObjective& obj, double eps = kDefaultEps,
                          int64_t max_major = 0);

// Best of the n + 1 prefixes of the x-ascending order and the two sign sets,
// under PreferSubset. Returned ids are sorted.
std::vector<NodeId> ExtractMinimizer(const OffloadObjective& obj,
                                     const MinNormState& state);

struct SolveStats {
  int64_t major_iterations = 0;
  int64_t minor_iterations = 0;
  int64_t oracle_calls = 0;
  double wall_time_ms = 0.0;
  bool iteration_limited = false;
};

struct SolveResult {
  std::string algorithm;
  Partition partition;
  double f_min = 0.0;
  double total_cost = 0.0;
  double gamma_empty = 0.0;
  AssumptionReport assumption;
  bool optimal_certified = false;
  SolveStats stats;
};

// Fills partition, f_min and total_cost from a set of free tasks sent to the
// cloud (cloud pins are added).
void FillSolution(const OffloadObjective& obj, std::span<const NodeId> x,
                  SolveResult& result);

// Globally optimal when the assumption holds in its strong form; otherwise
// a feasible heuristic answer with optimal_certified = false.
SolveResult Solve(const TaskGraph& g, double eps = kDefaultEps);

}  // namespace offload

#endif  // OFFLOAD_SFM_SOLVER_H_
