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

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "offload/cost_engine.h"
#include "offload/error.h"
#include "offload/exact_oracle.h"
#include "offload/reductions.h"
#include "test_util.h"

namespace offload {
namespace {

using testing::NaiveOptimum;
using testing::TwoNode;

TEST(GreedyVertex, TwoNodeExamples) {
  const TaskGraph g = TwoNode();
  const OffloadObjective obj(g);
  BaseVertex q = GreedyVertex(obj, std::vector<NodeId>{0, 1});
  EXPECT_EQ(q.coords, (std::vector<double>{3, -6}));
  // coords are indexed by node, so perm (v1, v0) gives F({v1}) = 2 at
  // index 1 and -5 at index 0.
  q = GreedyVertex(obj, std::vector<NodeId>{1, 0});
  EXPECT_EQ(q.coords, (std::vector<double>{-5, 2}));
}

TEST(GreedyVertex, EmptyGroundSet) {
  const TaskGraph g = TwoNode({Pin::kEdge, Pin::kCloud});
  const OffloadObjective obj(g);
  EXPECT_TRUE(GreedyVertex(obj, std::vector<NodeId>{}).coords.empty());
}

TEST(GreedyVertex, TightChainAndBasePolytopeMembership) {
  std::mt19937_64 rng(1);
  for (uint64_t seed = 0; seed < 40; ++seed) {
    const TaskGraph g = Generate(testing::StrongConfig(seed, 9, 24, 0.2));
    const OffloadObjective obj(g);
    std::vector<NodeId> perm(obj.ground_set().begin(), obj.ground_set().end());
    std::shuffle(perm.begin(), perm.end(), rng);
    const BaseVertex q = GreedyVertex(obj, perm);
    double prefix = 0.0;
    std::vector<NodeId> set;
    for (NodeId v : perm) {
      prefix += q.coords[obj.ground_index(v)];
      set.insert(std::lower_bound(set.begin(), set.end(), v), v);
      EXPECT_NEAR(prefix, obj.Value(set), 1e-6);
    }
    for (int t = 0; t < 30; ++t) {
      std::vector<NodeId> s;
      double sum = 0.0;
      for (NodeId v : obj.ground_set()) {
        if (rng() & 1) {
          s.push_back(v);
          sum += q.coords[obj.ground_index(v)];
        }
      }
      EXPECT_LE(sum, obj.Value(s) + 1e-6);
    }
  }
}

TEST(MinNormPoint, ModularSingleNode) {
  const TaskGraph g = testing::SingleNode();
  const OffloadObjective obj(g);
  const MinNormState st = MinNormPoint(obj);
  ASSERT_EQ(st.point.size(), 1u);
  EXPECT_NEAR(st.point[0], -2, 1e-12);
  EXPECT_EQ(st.termination, Termination::kWolfeGap);
}

TEST(MinNormPoint, TwoNode) {
  const TaskGraph g = TwoNode();
  const OffloadObjective obj(g);
  const MinNormState st = MinNormPoint(obj);
  EXPECT_LE(st.point[0], 1e-9);
  EXPECT_LE(st.point[1], 1e-9);
  // The base polytope is the segment from (3,-6) to (-5,2) on x0 + x1 = -3.
  EXPECT_NEAR(st.point[0], -1.5, 1e-9);
  EXPECT_NEAR(st.point[1], -1.5, 1e-9);
  EXPECT_EQ(ExtractMinimizer(obj, st), (std::vector<NodeId>{0, 1}));
}

TEST(MinNormPoint, InvalidArguments) {
  const TaskGraph empty = BuildGraph("", {}, {});
  EXPECT_THROW(MinNormPoint(OffloadObjective(empty)), Error);
  const TaskGraph g = TwoNode();
  EXPECT_THROW(MinNormPoint(OffloadObjective(g), 0.0), Error);
}

TEST(MinNormPoint, StateInvariantsAndMonotoneNorm) {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    const TaskGraph g = Generate(testing::StrongConfig(seed, 12, 40, 0.1));
    const OffloadObjective obj(g);
    const MinNormState st = MinNormPoint(obj);
    const int n = obj.ground_size();
    ASSERT_EQ(st.lambdas.size(), st.corral.size());
    EXPECT_LE(static_cast<int>(st.corral.size()), n + 1);
    double total = 0.0;
    for (double l : st.lambdas) {
      EXPECT_GE(l, 0.0);
      total += l;
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
    for (int i = 0; i < n; ++i) {
      double xi = 0.0;
      for (size_t k = 0; k < st.corral.size(); ++k) {
        xi += st.lambdas[k] * st.corral[k].coords[i];
      }
      EXPECT_NEAR(xi, st.point[i], 1e-9 * st.scale);
    }
    for (size_t k = 1; k < st.norm_trace.size(); ++k) {
      EXPECT_LE(st.norm_trace[k],
                st.norm_trace[k - 1] + 1e-9 * std::max(1.0, st.norm_trace[k - 1]));
    }
    EXPECT_FALSE(st.iteration_limited());
  }
}

TEST(MinNormPoint, IterationLimitFlag) {
  const TaskGraph g = Generate(testing::StrongConfig(3, 30, 150));
  const OffloadObjective obj(g);
  const MinNormState st = MinNormPoint(obj, kDefaultEps, 1);
  EXPECT_TRUE(st.iteration_limited());
  EXPECT_EQ(st.point.size(), static_cast<size_t>(obj.ground_size()));
}

TEST(Solve, SingleNode) {
  const SolveResult r = Solve(testing::SingleNode());
  EXPECT_EQ(r.partition.cloud_set, (std::vector<NodeId>{0}));
  EXPECT_EQ(r.total_cost, 3);
  EXPECT_EQ(r.algorithm, "sma");
}

TEST(Solve, TwoNode) {
  const SolveResult r = Solve(TwoNode());
  EXPECT_EQ(r.partition.cloud_set, (std::vector<NodeId>{0, 1}));
  EXPECT_EQ(r.total_cost, 3);
  EXPECT_EQ(r.f_min, -3);
  EXPECT_TRUE(r.optimal_certified);
}

TEST(Solve, TwoNodeWithPinnedEdge) {
  const SolveResult r = Solve(TwoNode({Pin::kFree, Pin::kEdge}));
  EXPECT_TRUE(r.partition.cloud_set.empty());
  EXPECT_EQ(r.total_cost, 6);
  EXPECT_EQ(r.f_min, 0);
}

TEST(Solve, AllMarginalsNonnegative) {
  const TaskGraph g = BuildGraph(
      "", {{1, 50, 0}, {2, 60, 0}, {1, 40, 0}},
      {{0, 1, {1, 3, 3, 1}}, {1, 2, {0, 2, 2, 0}}});
  const SolveResult r = Solve(g);
  EXPECT_TRUE(r.partition.cloud_set.empty());
  EXPECT_EQ(r.f_min, 0);
}

TEST(Solve, EmptyAndFullyPinned) {
  EXPECT_EQ(Solve(BuildGraph("", {}, {})).total_cost, 0);
  const SolveResult r = Solve(TwoNode({Pin::kCloud, Pin::kCloud}));
  EXPECT_EQ(r.partition.cloud_set, (std::vector<NodeId>{0, 1}));
  EXPECT_EQ(r.total_cost, 3);
  EXPECT_EQ(r.f_min, 0);
}

TEST(Solve, ExactUnderAssumption) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 4 + static_cast<int>(seed % 9);
    const TaskGraph g = Generate(testing::StrongConfig(seed, n, 2 * n));
    const SolveResult r = Solve(g);
    ASSERT_TRUE(r.optimal_certified);
    EXPECT_NEAR(r.total_cost, NaiveOptimum(g), 1e-6) << "seed " << seed;
    EXPECT_NEAR(r.total_cost, r.gamma_empty + r.f_min, 1e-6);
    EXPECT_LE(r.f_min, 0.0);
  }
}

TEST(Solve, FeasibleOnViolatingInstances) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    GenConfig cfg = testing::WildConfig(seed, 10, 25);
    cfg.pin_fraction = 0.3;
    const TaskGraph g = Generate(cfg);
    const SolveResult r = Solve(g);
    EXPECT_NO_THROW(ValidatePartition(g, r.partition));
    EXPECT_LE(r.f_min, 0.0);
    EXPECT_GE(r.total_cost, NaiveOptimum(g) - 1e-6);
    EXPECT_EQ(r.optimal_certified, r.assumption.holds_strong);
  }
}

TEST(Solve, ReductionInstanceNoWorseThanEmptySet) {
  const TaskGraph g =
      MaxcutToOffloading({3, {{0, 1}, {1, 2}, {0, 2}}, 2}).graph;
  const SolveResult r = Solve(g);
  EXPECT_FALSE(r.optimal_certified);
  EXPECT_LE(r.f_min, 0.0);
  EXPECT_GE(r.total_cost, BruteForce(g).best_total - 1e-9);
}

TEST(Solve, GraphCutOracleAgreesOnSmallInstances) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 3 + static_cast<int>(seed % 10);
    const TaskGraph g = Generate(testing::StrongConfig(seed, n, 3 * n, 0.25));
    EXPECT_NEAR(testing::GraphCutOptimum(g), NaiveOptimum(g), 1e-6) << seed;
  }
}

TEST(Solve, ExactOnLargeInstances) {
  for (uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 100 + 40 * static_cast<int>(seed);
    const TaskGraph g =
        Generate(testing::StrongConfig(seed, n, 10 * n, seed % 3 ? 0.1 : 0.0));
    const SolveResult r = Solve(g);
    ASSERT_TRUE(r.optimal_certified);
    EXPECT_FALSE(r.stats.iteration_limited);
    const double exact = testing::GraphCutOptimum(g);
    EXPECT_NEAR(r.total_cost, exact, 1e-9 * exact) << "n=" << n;
  }
}

TEST(Solve, ExactWhenCommunicationDominates) {
  for (uint64_t seed = 0; seed < 12; ++seed) {
    GenConfig cfg = testing::StrongConfig(seed, 150 + 30 * seed, 0);
    cfg.m = 8 * cfg.n;
    cfg.comp_range = {1, 10};
    cfg.comm_range = {5, 40};
    const TaskGraph g = Generate(cfg);
    const SolveResult r = Solve(g);
    EXPECT_FALSE(r.stats.iteration_limited);
    const double exact = testing::GraphCutOptimum(g);
    EXPECT_NEAR(r.total_cost, exact, 1e-9 * exact) << "seed " << seed;
  }
}

TEST(Solve, Deterministic) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const TaskGraph g = Generate(testing::StrongConfig(seed, 40, 160));
    const SolveResult a = Solve(g), b = Solve(g);
    EXPECT_EQ(a.partition, b.partition);
    EXPECT_EQ(a.total_cost, b.total_cost);
    EXPECT_EQ(a.stats.major_iterations, b.stats.major_iterations);
  }
}

TEST(Solve, ScaledInstanceScalesOptimum) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const TaskGraph g = Generate(testing::StrongConfig(seed, 10, 24));
    const double lambda = 3.5;
    EXPECT_NEAR(Solve(g.Scaled(lambda)).total_cost,
                lambda * Solve(g).total_cost, 1e-6 * lambda * Solve(g).total_cost);
  }
}

TEST(Termination, Names) {
  EXPECT_EQ(TerminationName(Termination::kWolfeGap), "wolfe_gap");
  EXPECT_EQ(TerminationName(Termination::kIterationLimit), "iteration_limit");
}

}  // namespace
}  // namespace offload
