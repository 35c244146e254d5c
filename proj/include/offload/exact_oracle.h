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

// Ground truth for small instances: exhaustive enumeration of the free
// ground set, and an LP-format export of the 0/1 program for external
// solvers.

#ifndef OFFLOAD_EXACT_ORACLE_H_
#define OFFLOAD_EXACT_ORACLE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "offload/model.h"

namespace offload {

inline constexpr int kMaxBruteForceGround = 24;

struct OracleResult {
  std::vector<NodeId> best_set;  // free tasks sent to the cloud, sorted
  double best_f = 0.0;
  double best_total = 0.0;
  uint64_t subsets_evaluated = 0;
};

// Gray-code enumeration with O(deg) incremental updates. The subset space is
// cut into a fixed number of chunks enumerated in parallel, so the result
// does not depend on the thread count. Throws kGroundSetTooLarge above 24
// free tasks.
OracleResult BruteForce(const TaskGraph& g);

// Serial reference: evaluates F from scratch on every subset. Kept as the
// independent check for BruteForce and the solvers.
OracleResult BruteForceReference(const TaskGraph& g);

// A 0/1 linear program whose objective equals the total cost of the
// partition encoded by the x variables (x_v = 1 means cloud).
struct LinearTerm {
  std::string var;
  double coef = 0.0;
};

struct LinearConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  std::string sense;  // "<=", ">=" or "="
  double rhs = 0.0;
};

struct VariableBounds {
  std::string var;
  double lo = 0.0;
  double hi = 1.0;
};

struct LinearProgram {
  std::vector<LinearTerm> objective;
  std::vector<LinearConstraint> constraints;
  std::vector<VariableBounds> bounds;
  std::vector<std::string> binaries;

  // CPLEX LP dialect: Minimize / Subject To / Bounds / Binary / End.
  std::string ToLpString() const;

  double EvaluateObjective(const std::map<std::string, double>& values) const;
  // True when every constraint and bound holds within `tol`.
  bool IsFeasible(const std::map<std::string, double>& values,
                  double tol = 1e-9) const;
};

// Variables: x_<v> per task, y_<src>_<dst>_<k> for k = 2, 3, 4 standing for
// the (edge, cloud), (cloud, edge) and (cloud, cloud) indicator products of
// each arc (the (edge, edge) product is one minus their sum), and const_one
// fixed to 1 carrying the objective constant.
LinearProgram BuildIlp(const TaskGraph& g);

// Assignment of every LP variable implied by a partition.
std::map<std::string, double> IlpAssignment(const TaskGraph& g,
                                            const Partition& p);

// Writes BuildIlp(g) to `path`. Throws kIoError.
void ExportIlp(const TaskGraph& g, const std::string& path);

}  // namespace offload

#endif  // OFFLOAD_EXACT_ORACLE_H_
