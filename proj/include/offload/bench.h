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

// Benchmark harness: runs algorithms over seeded instance suites and emits
// one CSV row per (instance, repetition, algorithm) plus per-group means.

#ifndef OFFLOAD_BENCH_H_
#define OFFLOAD_BENCH_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "offload/datagen_io.h"
#include "offload/model.h"
#include "offload/sfm_solver.h"

namespace offload {

inline constexpr std::string_view kCsvHeader =
    "instance,n,m,algorithm,total_cost,f_min,wall_time_ms,assumption_strong,"
    "certified,seed,status";

struct BenchRecord {
  std::string instance;
  int n = 0;
  int m = 0;
  std::string algorithm;  // sma, greedy, mincut, brute, ilp-export; ":mean"
  double total_cost = 0.0;
  double f_min = 0.0;
  double wall_time_ms = 0.0;
  bool assumption_strong = false;
  bool certified = false;
  uint64_t seed = 0;
  std::string status = "ok";
};

enum class InstanceSource { kGenerate, kSnap, kFile };

struct SuiteEntry {
  std::string name;
  InstanceSource source = InstanceSource::kGenerate;
  GenConfig gen;       // kGenerate, kSnap (seed is the base seed)
  std::string path;    // kSnap, kFile
  int take_nodes = 0;  // kSnap
};

struct Suite {
  std::vector<SuiteEntry> instances;
  std::vector<std::string> algorithms;
  int repetitions = 1;
  double eps = kDefaultEps;
};

// Relative paths in the suite resolve against `base_dir`.
// Throws kParseError / kSchemaError / kInvalidArgument.
Suite ParseSuite(std::string_view json_text, const std::string& base_dir = "");
Suite LoadSuite(const std::string& path);

struct BenchOptions {
  bool no_timing = false;  // write 0 for wall_time_ms (golden files)
  int threads = 0;         // 0: OFFLOAD_THREADS or the OpenMP default
  std::string lp_prefix;   // ilp-export rows write <lp_prefix><inst>_r<k>.lp
};

// Worker-pool count after applying OFFLOAD_THREADS.
int ResolveThreads(int requested);

// Runs one named algorithm. Throws kInvalidArgument for unknown names and
// propagates solver errors (kNotApplicable, kGroundSetTooLarge).
SolveResult RunAlgorithm(const TaskGraph& g, std::string_view algorithm,
                         double eps = kDefaultEps);

// Rows are ordered by (instance entry, algorithm, repetition) regardless of
// scheduling, followed by the ":mean" rows per (instance entry, algorithm).
std::vector<BenchRecord> RunSuite(const Suite& suite,
                                  const BenchOptions& options = {});

std::string FormatCsv(const std::vector<BenchRecord>& records);

std::string SolveResultJson(const TaskGraph& g, const SolveResult& r);

}  // namespace offload

#endif  // OFFLOAD_BENCH_H_
