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

#include "offload/reductions.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>

#include "offload/datagen_io.h"
#include "offload/error.h"
#include "offload/exact_oracle.h"

namespace offload {

void ValidateCutInstance(const CutInstance& c) {
  if (c.n < 0) throw Error(ErrorCode::kInvalidArgument, "negative n");
  std::set<std::pair<int, int>> seen;
  for (const auto& [u, v] : c.edges) {
    if (u < 0 || u >= c.n || v < 0 || v >= c.n) {
      throw Error(ErrorCode::kInvalidArgument,
                  "edge endpoint out of range: " + std::to_string(u) + " " +
                      std::to_string(v));
    }
    if (u == v) {
      throw Error(ErrorCode::kInvalidArgument,
                  "self-loop at " + std::to_string(u));
    }
    if (!seen.insert(std::minmax(u, v)).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate edge " + std::to_string(u) + " " +
                      std::to_string(v));
    }
  }
  if (c.k < 0 || c.k > static_cast<int>(c.edges.size())) {
    throw Error(ErrorCode::kInvalidArgument,
                "k=" + std::to_string(c.k) + " outside [0, " +
                    std::to_string(c.edges.size()) + "]");
  }
}

ReducedInstance MaxcutToOffloading(const CutInstance& c) {
  ValidateCutInstance(c);
  const int m = static_cast<int>(c.edges.size());
  if (m == 0) throw Error(ErrorCode::kEmptyGraph, "MAX-CUT graph has no edges");
  const double md = m;
  std::vector<NodeCost> nodes(c.n, NodeCost{0.0, 0.0, 0.0});
  std::vector<Edge> arcs;
  arcs.reserve(m);
  for (const auto& [u, v] : c.edges) {
    const auto [lo, hi] = std::minmax(u, v);
    arcs.push_back({lo, hi, EdgeCost{md, 1.0, 1.0, md}});
  }
  ReducedInstance r;
  r.graph = BuildGraph("maxcut_n" + std::to_string(c.n) + "_m" +
                           std::to_string(m) + "_k" + std::to_string(c.k),
                       std::move(nodes), std::move(arcs));
  r.threshold = md * (md - c.k) + c.k;
  return r;
}

bool DecideOffloading(const TaskGraph& g, double threshold) {
  return BruteForce(g).best_total <= threshold + 1e-9;
}

int BruteForceMaxCut(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n > 24) throw Error(ErrorCode::kSizeGuard, "MAX-CUT brute force n > 24");
  int best = 0;
  if (n == 0) return 0;
  // Vertex n-1 stays on side 0; the complement gives the same cut.
  const uint32_t total = 1u << (n - 1);
  for (uint32_t mask = 0; mask < total; ++mask) {
    int cut = 0;
    for (const auto& [u, v] : edges) cut += ((mask >> u) ^ (mask >> v)) & 1u;
    best = std::max(best, cut);
  }
  return best;
}

ReductionReport ValidateReduction(const CutInstance& c) {
  const int m = static_cast<int>(c.edges.size());
  if (c.n > 16 || m > 24) {
    throw Error(ErrorCode::kSizeGuard, "reduction check needs n <= 16, m <= 24");
  }
  CutInstance base = c;
  base.k = 0;
  const ReducedInstance reduced = MaxcutToOffloading(base);

  ReductionReport r;
  r.n = c.n;
  r.m = m;
  r.max_cut = BruteForceMaxCut(c.n, c.edges);
  r.offload_optimum = BruteForce(reduced.graph).best_total;
  r.predicted_optimum =
      static_cast<double>(m) * (m - r.max_cut) + r.max_cut;
  r.optimum_matches = std::abs(r.offload_optimum - r.predicted_optimum) <= 1e-9;
  r.decisions_match = true;
  for (int k = 0; k <= m; ++k) {
    const double threshold = static_cast<double>(m) * (m - k) + k;
    const bool agrees =
        DecideOffloading(reduced.graph, threshold) == (r.max_cut >= k);
    r.decisions.push_back(agrees);
    r.decisions_match &= agrees;
  }
  r.passed = r.optimum_matches && r.decisions_match;
  return r;
}

CutInstance ReadCutGraph(const std::string& path, int k) {
  const EdgeList list = ReadEdgeList(path);
  std::unordered_map<int64_t, int> dense;
  CutInstance c;
  std::set<std::pair<int, int>> seen;
  auto index_of = [&](int64_t id) {
    return dense.try_emplace(id, static_cast<int>(dense.size())).first->second;
  };
  for (const auto& [a, b] : list.pairs) {
    const int u = index_of(a);
    const int v = index_of(b);
    if (u == v) continue;
    if (seen.insert(std::minmax(u, v)).second) c.edges.emplace_back(u, v);
  }
  c.n = static_cast<int>(dense.size());
  c.k = k;
  return c;
}

}  // namespace offload
