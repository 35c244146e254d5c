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

// MAX-CUT to symmetric offloading. Each vertex becomes a zero-cost task and
// each undirected edge an arc with same-side cost m and cross cost 1, so a
// partition cutting q edges costs m (m - q) + q.

#ifndef OFFLOAD_REDUCTIONS_H_
#define OFFLOAD_REDUCTIONS_H_

#include <string>
#include <utility>
#include <vector>

#include "offload/model.h"

namespace offload {

struct CutInstance {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // undirected, simple
  int k = 0;                               // target cut size
};

// Throws kInvalidArgument on self-loops, duplicates, bad indices or k out of
// [0, |edges|].
void ValidateCutInstance(const CutInstance& c);

struct ReducedInstance {
  TaskGraph graph;
  double threshold = 0.0;  // m (m - k) + k
};

// Throws kEmptyGraph when there are no edges.
ReducedInstance MaxcutToOffloading(const CutInstance& c);

// True iff the cheapest partition costs at most threshold + 1e-9.
// Brute force; throws kGroundSetTooLarge above 24 free tasks.
bool DecideOffloading(const TaskGraph& g, double threshold);

// Exhaustive MAX-CUT value; n <= 24.
int BruteForceMaxCut(int n, const std::vector<std::pair<int, int>>& edges);

struct ReductionReport {
  int n = 0;
  int m = 0;
  int max_cut = 0;             // q*
  double offload_optimum = 0;  // O*
  double predicted_optimum = 0;  // m (m - q*) + q*
  bool optimum_matches = false;
  // decisions[k] is true when DecideOffloading at threshold(k) agreed with
  // q* >= k.
  std::vector<bool> decisions;
  bool decisions_match = false;
  bool passed = false;
};

// Requires n <= 16 and m <= 24 (kSizeGuard) and at least one edge.
ReductionReport ValidateReduction(const CutInstance& c);

// Reads a whitespace edge list ('#' comments) as an undirected simple graph:
// ids are reindexed densely by first appearance, self-loops dropped and
// repeated pairs (either orientation) kept once. Throws kIoError or
// kParseError.
CutInstance ReadCutGraph(const std::string& path, int k = 0);

}  // namespace offload

#endif  // OFFLOAD_REDUCTIONS_H_
