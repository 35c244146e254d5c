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

// Instance generation and serialization.

#ifndef OFFLOAD_DATAGEN_IO_H_
#define OFFLOAD_DATAGEN_IO_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "offload/model.h"

namespace offload {

struct GenConfig {
  std::string name;
  int n = 10;
  int64_t m = 0;
  // (r_ee : r_ec : r_ce : r_cc); every arc draws one base cost c from
  // comm_range and gets c * ratio.
  std::optional<std::array<double, 4>> ratio;
  std::pair<double, double> comp_range{1.0, 100.0};
  std::pair<double, double> comm_range{1.0, 20.0};
  uint64_t seed = 0;
  // Without a ratio: draw l_ec, l_ce from comm_range and l_ee, l_cc from
  // [0, min(l_ec, l_ce)]. Ignored in ratio mode.
  bool enforce_assumption = false;
  // Fraction of tasks pinned to the edge (the latency-constrained set).
  double pin_fraction = 0.0;
};

// Parses "A:B:C:D" into (r_ee, r_ec, r_ce, r_cc). Throws kInvalidArgument.
std::array<double, 4> ParseRatio(std::string_view text);

// Throws kInvalidArgument.
void ValidateGenConfig(const GenConfig& cfg);

// Deterministic in cfg.seed. Throws kTooManyEdges when m > n (n - 1).
TaskGraph Generate(const GenConfig& cfg);

struct EdgeList {
  std::vector<std::pair<int64_t, int64_t>> pairs;
};

// Whitespace "u v" pairs, one per line; '#' lines and blank lines skipped,
// trailing columns ignored. Throws kIoError or kParseError (detail = line).
EdgeList ReadEdgeList(const std::string& path);

// Keeps the first `take_nodes` distinct ids in file order, induces the
// subgraph on them (each line u v becomes arc u -> v; repeated lines merge by
// cost summation), reindexes densely and synthesizes costs as Generate does.
TaskGraph LoadSnap(const std::string& path, int take_nodes,
                   const GenConfig& cfg);

std::string SerializeInstance(const TaskGraph& g);
// Throws kParseError for invalid JSON, kSchemaError (detail = JSON pointer)
// for structural problems, and model errors from BuildGraph.
TaskGraph ParseInstance(std::string_view text);

void SaveInstance(const TaskGraph& g, const std::string& path);
TaskGraph LoadInstance(const std::string& path);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace offload

#endif  // OFFLOAD_DATAGEN_IO_H_
