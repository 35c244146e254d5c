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

#include "offload/sfm_solver.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <utility>

#include "offload/error.h"

namespace offload {
namespace {

constexpr double kCoefTol = 1e-12;
constexpr double kPivotTol = 1e-12;
constexpr int64_t kParallelDotWork = int64_t{1} << 16;

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Cholesky factor of M = c2 * 1 1^T + G over the corral, where G is the Gram
// matrix of the corral vertices. M is positive definite exactly when the
// vertices are affinely independent, and M beta = 1 gives the affine
// minimum-norm combination alpha = beta / sum(beta).
class CorralSystem {
 public:
  CorralSystem(double c2, int capacity)
      : c2_(c2),
        cap_(capacity),
        gram_(static_cast<size_t>(capacity) * capacity, 0.0),
        chol_(static_cast<size_t>(capacity) * capacity, 0.0) {}

  int size() const { return size_; }

  // `dots` holds the new vertex's inner products with the current corral,
  // `self` its squared norm. Returns false, leaving the system unchanged,
  // when the vertex is numerically affinely dependent.
  bool Append(std::span<const double> dots, double self) {
    const int k = size_;
    if (k + 1 > cap_) return false;
    for (int j = 0; j < k; ++j) {
      gram_[Idx(k, j)] = gram_[Idx(j, k)] = dots[j];
    }
    gram_[Idx(k, k)] = self;
    double pivot = AppendRow(k);
    if (pivot <= kPivotTol * Trace(k + 1)) {
      Refactor(k);
      pivot = AppendRow(k);
      if (pivot <= kPivotTol * Trace(k + 1)) return false;
    }
    chol_[Idx(k, k)] = std::sqrt(pivot);
    size_ = k + 1;
    return true;
  }

  void Remove(int i) {
    const int k = size_;
    for (int r = i; r + 1 < k; ++r) {
      for (int c = 0; c < k; ++c) gram_[Idx(r, c)] = gram_[Idx(r + 1, c)];
    }
    for (int c = i; c + 1 < k; ++c) {
      for (int r = 0; r + 1 < k; ++r) gram_[Idx(r, c)] = gram_[Idx(r, c + 1)];
    }
    for (int r = i; r + 1 < k; ++r) {
      for (int c = 0; c <= r + 1; ++c) chol_[Idx(r, c)] = chol_[Idx(r + 1, c)];
    }
    // Rows i..k-2 now carry one entry above the diagonal; rotate it away.
    for (int r = i; r + 1 < k; ++r) {
      const double a = chol_[Idx(r, r)];
      const double b = chol_[Idx(r, r + 1)];
      const double h = std::hypot(a, b);
      const double c = a / h;
      const double s = b / h;
      for (int q = r; q + 1 < k; ++q) {
        const double x = chol_[Idx(q, r)];
        const double y = chol_[Idx(q, r + 1)];
        chol_[Idx(q, r)] = c * x + s * y;
        chol_[Idx(q, r + 1)] = -s * x + c * y;
      }
      chol_[Idx(r, r + 1)] = 0.0;
    }
    for (int q = 0; q < k; ++q) chol_[Idx(q, k - 1)] = 0.0;
    for (int c = 0; c < k; ++c) chol_[Idx(k - 1, c)] = 0.0;
    size_ = k - 1;
  }

  std::vector<double> SolveOnes() const {
    const int k = size_;
    std::vector<double> z(k);
    for (int i = 0; i < k; ++i) {
      double s = 1.0;
      for (int j = 0; j < i; ++j) s -= chol_[Idx(i, j)] * z[j];
      z[i] = s / chol_[Idx(i, i)];
    }
    for (int i = k - 1; i >= 0; --i) {
      double s = z[i];
      for (int j = i + 1; j < k; ++j) s -= chol_[Idx(j, i)] * z[j];
      z[i] = s / chol_[Idx(i, i)];
    }
    return z;
  }

 private:
  size_t Idx(int r, int c) const { return static_cast<size_t>(r) * cap_ + c; }
  double M(int r, int c) const { return c2_ + gram_[Idx(r, c)]; }
  double Trace(int k) const {
    double t = 0.0;
    for (int i = 0; i < k; ++i) t += M(i, i);
    return t;
  }

  // Fills row k of the factor left of the diagonal; returns the pivot.
  double AppendRow(int k) {
    double pivot = M(k, k);
    for (int j = 0; j < k; ++j) {
      double s = M(k, j);
      for (int p = 0; p < j; ++p) s -= chol_[Idx(k, p)] * chol_[Idx(j, p)];
      const double v = s / chol_[Idx(j, j)];
      chol_[Idx(k, j)] = v;
      pivot -= v * v;
    }
    return pivot;
  }

  // Recomputes the factor of the first k rows from the stored Gram matrix.
  void Refactor(int k) {
    for (int r = 0; r < k; ++r) {
      const double pivot = AppendRow(r);
      chol_[Idx(r, r)] = std::sqrt(std::max(pivot, kPivotTol * Trace(r + 1)));
    }
  }

  double c2_;
  int cap_;
  int size_ = 0;
  std::vector<double> gram_;
  std::vector<double> chol_;
};

// Greedy vertex that also folds |F(prefix)| into `scale`.
BaseVertex GreedyVertexTracked(const OffloadObjective& obj,
                               std::span<const NodeId> perm, double& scale) {
  BaseVertex q;
  q.coords.assign(obj.ground_size(), 0.0);
  q.perm.assign(perm.begin(), perm.end());
  std::vector<Side> sides = obj.base_sides();
  double prefix = 0.0;
  for (NodeId v : perm) {
    const double m = obj.Marginal(v, sides);
    q.coords[obj.ground_index(v)] = m;
    sides[v] = Side::kCloud;
    prefix += m;
    scale = std::max(scale, std::abs(prefix));
  }
  return q;
}

std::vector<NodeId> AscendingOrder(const OffloadObjective& obj,
                                   std::span<const double> x) {
  std::vector<NodeId> order(obj.ground_set().begin(), obj.ground_set().end());
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return x[obj.ground_index(a)] < x[obj.ground_index(b)];
  });
  return order;
}

void Recombine(const MinNormState& s, std::vector<double>& x) {
  std::fill(x.begin(), x.end(), 0.0);
  for (size_t i = 0; i < s.corral.size(); ++i) {
    const double w = s.lambdas[i];
    const std::vector<double>& c = s.corral[i].coords;
    for (size_t e = 0; e < x.size(); ++e) x[e] += w * c[e];
  }
}

}  // namespace

BaseVertex GreedyVertex(const OffloadObjective& obj,
                        std::span<const NodeId> perm) {
  double scale = 1.0;
  return GreedyVertexTracked(obj, perm, scale);
}

std::string_view TerminationName(Termination t) {
  switch (t) {
    case Termination::kWolfeGap: return "wolfe_gap";
    case Termination::kAffineDependence: return "affine_dependence";
    case Termination::kStalled: return "stalled";
    case Termination::kIterationLimit: return "iteration_limit";
  }
  return "?";
}

MinNormState MinNormPoint(const OffloadObjective& obj, double eps,
                          int64_t max_major) {
  const int n = obj.ground_size();
  if (n < 1) {
    throw Error(ErrorCode::kInvalidArgument, "empty ground set");
  }
  if (!(eps > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "eps must be positive");
  }
  if (max_major <= 0) max_major = int64_t{10} * n * n;

  MinNormState s;
  s.eps = eps;
  s.corral.push_back(GreedyVertexTracked(obj, obj.ground_set(), s.scale));
  s.oracle_calls = 1;
  s.lambdas = {1.0};
  s.point = s.corral.front().coords;

  const double q0_norm = Dot(s.point, s.point);
  CorralSystem system(std::max(1.0, q0_norm), n + 1);
  const double no_dots[1] = {0.0};
  system.Append(std::span<const double>(no_dots, 0), q0_norm);
  s.norm_trace.push_back(q0_norm);

  std::vector<double> dots;
  while (true) {
    if (s.major_iterations >= max_major) {
      s.termination = Termination::kIterationLimit;
      break;
    }
    ++s.major_iterations;

    const std::vector<NodeId> order = AscendingOrder(obj, s.point);
    BaseVertex q = GreedyVertexTracked(obj, order, s.scale);
    ++s.oracle_calls;

    const double xx = Dot(s.point, s.point);
    const double xq = Dot(s.point, q.coords);
    if (xx - xq <= s.eps * s.scale * s.scale) {
      s.termination = Termination::kWolfeGap;
      break;
    }

    const int k = static_cast<int>(s.corral.size());
    dots.assign(k, 0.0);
#pragma omp parallel for schedule(static) if (int64_t{k} * n > kParallelDotWork)
    for (int i = 0; i < k; ++i) dots[i] = Dot(s.corral[i].coords, q.coords);
    if (!system.Append(dots, Dot(q.coords, q.coords))) {
      s.termination = Termination::kAffineDependence;
      break;
    }
    s.corral.push_back(std::move(q));
    s.lambdas.push_back(0.0);

    bool stalled = false;
    bool first_minor = true;
    while (true) {
      ++s.minor_iterations;
      std::vector<double> alpha = system.SolveOnes();
      const double sum = std::accumulate(alpha.begin(), alpha.end(), 0.0);
      for (double& a : alpha) a /= sum;
      if (*std::min_element(alpha.begin(), alpha.end()) > kCoefTol) {
        s.lambdas = std::move(alpha);
        break;
      }
      // Move from lambda toward alpha until the first coefficient hits zero.
      double theta = 1.0;
      int blocking = -1;
      for (size_t i = 0; i < alpha.size(); ++i) {
        if (alpha[i] > kCoefTol) continue;
        const double denom = s.lambdas[i] - alpha[i];
        const double t = denom > 0.0 ? s.lambdas[i] / denom : 0.0;
        if (blocking < 0 || t < theta) {
          theta = t;
          blocking = static_cast<int>(i);
        }
      }
      theta = std::clamp(theta, 0.0, 1.0);
      for (size_t i = 0; i < alpha.size(); ++i) {
        s.lambdas[i] = theta * alpha[i] + (1.0 - theta) * s.lambdas[i];
      }
      s.lambdas[blocking] = 0.0;
      for (int i = static_cast<int>(s.lambdas.size()) - 1; i >= 0; --i) {
        if (s.lambdas[i] > kCoefTol) continue;
        if (first_minor && i == static_cast<int>(s.lambdas.size()) - 1 &&
            i == k) {
          stalled = true;
        }
        system.Remove(i);
        s.corral.erase(s.corral.begin() + i);
        s.lambdas.erase(s.lambdas.begin() + i);
      }
      const double total =
          std::accumulate(s.lambdas.begin(), s.lambdas.end(), 0.0);
      for (double& l : s.lambdas) l /= total;
      first_minor = false;
      if (stalled) break;
    }
    Recombine(s, s.point);
    s.norm_trace.push_back(Dot(s.point, s.point));
    if (stalled) {
      s.termination = Termination::kStalled;
      break;
    }
  }
  return s;
}

std::vector<NodeId> ExtractMinimizer(const OffloadObjective& obj,
                                     const MinNormState& state) {
  const double tol = obj.tie_tolerance();
  std::vector<NodeId> best;
  double best_f = 0.0;
  auto consider = [&](std::vector<NodeId> set, double f) {
    std::sort(set.begin(), set.end());
    if (PreferSubset(f, set, best_f, best, tol)) {
      best = std::move(set);
      best_f = f;
    }
  };

  const std::vector<NodeId> order = AscendingOrder(obj, state.point);
  std::vector<Side> sides = obj.base_sides();
  std::vector<NodeId> prefix;
  double running = 0.0;
  for (NodeId v : order) {
    running += obj.Marginal(v, sides);
    sides[v] = Side::kCloud;
    prefix.push_back(v);
    consider(prefix, running);
  }

  std::vector<NodeId> negative, nonpositive;
  for (NodeId v : obj.ground_set()) {
    const double xv = state.point[obj.ground_index(v)];
    if (xv < 0.0) negative.push_back(v);
    if (xv <= 0.0) nonpositive.push_back(v);
  }
  const double f_neg = obj.Value(negative);
  const double f_nonpos = obj.Value(nonpositive);
  consider(std::move(negative), f_neg);
  consider(std::move(nonpositive), f_nonpos);
  return best;
}

void FillSolution(const OffloadObjective& obj, std::span<const NodeId> x,
                  SolveResult& result) {
  std::vector<NodeId> cloud(obj.base_cloud().begin(), obj.base_cloud().end());
  cloud.insert(cloud.end(), x.begin(), x.end());
  result.partition = Partition::FromCloudSet(std::move(cloud));
  result.f_min = obj.Value(x);
  result.gamma_empty = obj.gamma_empty();
  result.total_cost = TotalCost(obj.graph(), result.partition).total;
}

SolveResult Solve(const TaskGraph& g, double eps) {
  const auto start = std::chrono::steady_clock::now();
  const OffloadObjective obj(g);
  SolveResult result;
  result.algorithm = "sma";
  std::vector<NodeId> best;
  if (obj.ground_size() > 0) {
    const MinNormState state = MinNormPoint(obj, eps);
    best = ExtractMinimizer(obj, state);
    result.stats.major_iterations = state.major_iterations;
    result.stats.minor_iterations = state.minor_iterations;
    result.stats.oracle_calls = state.oracle_calls;
    result.stats.iteration_limited = state.iteration_limited();
  }
  const auto stop = std::chrono::steady_clock::now();
  FillSolution(obj, best, result);
  result.assumption = CheckAssumption(g);
  result.optimal_certified = result.assumption.holds_strong;
  result.stats.wall_time_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return result;
}

}  // namespace offload
