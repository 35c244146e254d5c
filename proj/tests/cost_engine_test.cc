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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "offload/error.h"
#include "test_util.h"

namespace offload {
namespace {

using testing::NaiveCost;
using testing::TwoNode;

std::vector<NodeId> RandomSubset(std::span<const NodeId> ground,
                                 std::mt19937_64& rng) {
  std::vector<NodeId> out;
  for (NodeId v : ground) {
    if (rng() & 1) out.push_back(v);
  }
  return out;
}

TEST(TotalCost, SingleNode) {
  const TaskGraph g = testing::SingleNode();
  EXPECT_EQ(TotalCost(g, Partition{}).total, 5);
  EXPECT_EQ(TotalCost(g, Partition::FromCloudSet({0})).total, 3);
}

TEST(TotalCost, TwoNodeSelectsCloudEdgeComponent) {
  const CostBreakdown b = TotalCost(TwoNode(), Partition::FromCloudSet({0}));
  EXPECT_EQ(b.total, 9);
  EXPECT_EQ(b.comp, 4);
  EXPECT_EQ(b.comm_inter, 5);
  EXPECT_EQ(b.comm_intra_edge, 0);
  EXPECT_EQ(b.comm_intra_cloud, 0);
}

TEST(TotalCost, TransferChargedOnEdgeSide) {
  const TaskGraph g = testing::SingleNode(5, 3, 2);
  EXPECT_EQ(TotalCost(g, Partition{}).total, 7);
  EXPECT_EQ(TotalCost(g, Partition::FromCloudSet({0})).total, 3);
}

TEST(TotalCost, PinViolation) {
  const TaskGraph g = TwoNode({Pin::kEdge, Pin::kFree});
  EXPECT_THROW(TotalCost(g, Partition::FromCloudSet({0})), Error);
}

TEST(TotalCost, BreakdownSumsAndMatchesNaive) {
  std::mt19937_64 rng(5);
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const TaskGraph g = Generate(testing::WildConfig(seed, 8, 20));
    const uint64_t mask = rng() & 0xff;
    std::vector<NodeId> cloud;
    for (int v = 0; v < 8; ++v) {
      if (mask >> v & 1) cloud.push_back(v);
    }
    const CostBreakdown b = TotalCost(g, Partition::FromCloudSet(cloud));
    EXPECT_TRUE(NearlyEqual(
        b.total, b.comp + b.comm_inter + b.comm_intra_edge + b.comm_intra_cloud,
        0.0, 1e-9));
    EXPECT_TRUE(NearlyEqual(b.total, NaiveCost(g, mask)));
  }
}

TEST(Objective, GammaAndValue) {
  const TaskGraph g = TwoNode();
  const OffloadObjective obj(g);
  EXPECT_EQ(obj.gamma_empty(), 6);
  EXPECT_EQ(obj.Gamma(std::vector<NodeId>{}), 6);
  EXPECT_EQ(obj.Gamma(std::vector<NodeId>{0, 1}), 3);
  EXPECT_EQ(obj.Value(std::vector<NodeId>{}), 0.0);
  EXPECT_EQ(obj.Value(std::vector<NodeId>{0}), 3);
  EXPECT_EQ(obj.Value(std::vector<NodeId>{1}), 2);
  EXPECT_EQ(obj.Value(std::vector<NodeId>{0, 1}), -3);
}

TEST(Objective, EmptyGraph) {
  const TaskGraph g = BuildGraph("", {}, {});
  const OffloadObjective obj(g);
  EXPECT_EQ(obj.ground_size(), 0);
  EXPECT_EQ(obj.Gamma(std::vector<NodeId>{}), 0);
  EXPECT_EQ(obj.Value(std::vector<NodeId>{}), 0);
}

TEST(Objective, GroundSetExcludesPins) {
  const TaskGraph g = BuildGraph(
      "", {{1, 1, 0}, {1, 1, 0}, {1, 1, 0}}, {},
      {Pin::kEdge, Pin::kFree, Pin::kCloud});
  const OffloadObjective obj(g);
  EXPECT_EQ(std::vector<NodeId>(obj.ground_set().begin(), obj.ground_set().end()),
            std::vector<NodeId>{1});
  EXPECT_EQ(std::vector<NodeId>(obj.base_cloud().begin(), obj.base_cloud().end()),
            std::vector<NodeId>{2});
  EXPECT_EQ(obj.ground_index(1), 0);
  EXPECT_THROW(obj.Value(std::vector<NodeId>{0}), Error);
  EXPECT_THROW(obj.Value(std::vector<NodeId>{2}), Error);
}

TEST(Objective, FEmptyIsExactlyZeroWithPins) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const TaskGraph g = Generate(testing::StrongConfig(seed, 10, 25, 0.3));
    const OffloadObjective obj(g);
    EXPECT_EQ(obj.Value(std::vector<NodeId>{}), 0.0);
  }
}

TEST(Marginal, Examples) {
  const TaskGraph g = TwoNode();
  const OffloadObjective obj(g);
  EXPECT_EQ(obj.Marginal(0, std::vector<NodeId>{}), 3);
  EXPECT_EQ(obj.Marginal(0, std::vector<NodeId>{1}), -5);
  const TaskGraph single = testing::SingleNode(5, 3, 1);
  const OffloadObjective s(single);
  EXPECT_EQ(s.Marginal(0, std::vector<NodeId>{}), -3);
}

TEST(Marginal, Errors) {
  const TaskGraph g = TwoNode({Pin::kFree, Pin::kEdge});
  const OffloadObjective obj(g);
  try {
    obj.Marginal(1, std::vector<NodeId>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotInGroundSet);
  }
  try {
    obj.Marginal(0, std::vector<NodeId>{0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAlreadyInSet);
  }
}

TEST(Marginal, OracleConsistency) {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (uint64_t seed = 0; checked < 500; ++seed) {
    const TaskGraph g = Generate(seed % 2 ? testing::WildConfig(seed, 9, 25)
                                          : testing::StrongConfig(seed, 9, 25, 0.2));
    const OffloadObjective obj(g);
    for (int trial = 0; trial < 10; ++trial, ++checked) {
      std::vector<NodeId> a = RandomSubset(obj.ground_set(), rng);
      std::vector<NodeId> rest;
      for (NodeId v : obj.ground_set()) {
        if (!std::binary_search(a.begin(), a.end(), v)) rest.push_back(v);
      }
      if (rest.empty()) continue;
      const NodeId v = rest[rng() % rest.size()];
      std::vector<NodeId> av = a;
      av.insert(std::lower_bound(av.begin(), av.end(), v), v);
      const double expected = obj.Value(av) - obj.Value(a);
      EXPECT_TRUE(NearlyEqual(obj.Marginal(v, a), expected))
          << obj.Marginal(v, a) << " vs " << expected;
    }
  }
}

TEST(Marginal, DiminishingReturnsUnderAssumption) {
  std::mt19937_64 rng(23);
  for (int sample = 0; sample < 1000; ++sample) {
    const TaskGraph g =
        Generate(testing::StrongConfig(sample % 40, 10, 30, 0.2));
    const OffloadObjective obj(g);
    std::vector<NodeId> b = RandomSubset(obj.ground_set(), rng);
    std::vector<NodeId> a;
    for (NodeId v : b) {
      if (rng() & 1) a.push_back(v);
    }
    std::vector<NodeId> rest;
    for (NodeId v : obj.ground_set()) {
      if (!std::binary_search(b.begin(), b.end(), v)) rest.push_back(v);
    }
    if (rest.empty()) continue;
    const NodeId v = rest[rng() % rest.size()];
    EXPECT_GE(obj.Marginal(v, a), obj.Marginal(v, b) - 1e-9);
  }
}

TEST(Objective, TotalEqualsGammaPlusF) {
  std::mt19937_64 rng(3);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const TaskGraph g = Generate(testing::WildConfig(seed, 8, 16));
    const OffloadObjective obj(g);
    for (int t = 0; t < 10; ++t) {
      const std::vector<NodeId> x = RandomSubset(obj.ground_set(), rng);
      EXPECT_TRUE(NearlyEqual(TotalCost(g, Partition::FromCloudSet(x)).total,
                              obj.gamma_empty() + obj.Value(x)));
    }
  }
}

TEST(Objective, ScalingIsLinear) {
  std::mt19937_64 rng(9);
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const TaskGraph g = Generate(testing::WildConfig(seed, 7, 14));
    const double lambda = 0.25 + (seed % 7);
    const TaskGraph s = g.Scaled(lambda);
    const OffloadObjective og(g), os(s);
    for (int t = 0; t < 10; ++t) {
      const std::vector<NodeId> x = RandomSubset(og.ground_set(), rng);
      EXPECT_TRUE(NearlyEqual(os.Value(x), lambda * og.Value(x)));
    }
  }
}

TEST(Objective, SidesMarginalMatchesSetMarginal) {
  const TaskGraph g = Generate(testing::WildConfig(4, 10, 40));
  const OffloadObjective obj(g);
  const std::vector<NodeId> a{1, 4, 7};
  const std::vector<Side> sides = obj.SidesFor(a);
  for (NodeId v : obj.ground_set()) {
    if (std::binary_search(a.begin(), a.end(), v)) continue;
    EXPECT_EQ(obj.Marginal(v, std::span<const Side>(sides)),
              obj.Marginal(v, std::span<const NodeId>(a)));
  }
}

TEST(PreferSubset, Ordering) {
  const std::vector<NodeId> small{2}, big{0, 1}, other{0, 3};
  EXPECT_TRUE(PreferSubset(-1.0, big, 0.0, small, 1e-9));
  EXPECT_FALSE(PreferSubset(0.0, small, -1.0, big, 1e-9));
  EXPECT_TRUE(PreferSubset(-1.0, small, -1.0 + 1e-12, big, 1e-9));
  EXPECT_TRUE(PreferSubset(-1.0, big, -1.0, other, 1e-9));
  EXPECT_FALSE(PreferSubset(-1.0, other, -1.0, big, 1e-9));
  EXPECT_FALSE(PreferSubset(-1.0, big, -1.0, big, 1e-9));
}

}  // namespace
}  // namespace offload
