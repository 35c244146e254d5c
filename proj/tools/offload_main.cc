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

// offload: command-line front end.
//
// Exit codes
//   0  success
//   1  I/O, parse or schema error
//   2  algorithm not applicable (min-cut guard)
//   3  ground set too large for brute force
//   4  validation failed
//   5  usage error or invalid argument
//   6  invalid instance data
//   7  every bench row failed
//   8  internal error

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "offload/bench.h"
#include "offload/datagen_io.h"
#include "offload/error.h"
#include "offload/exact_oracle.h"
#include "offload/reductions.h"

namespace {

using offload::ErrorCode;

enum Exit {
  kOk = 0,
  kIo = 1,
  kNotApplicable = 2,
  kTooLarge = 3,
  kValidationFailed = 4,
  kUsage = 5,
  kBadInstance = 6,
  kAllFailed = 7,
  kInternal = 8,
};

int ExitFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIoError:
    case ErrorCode::kParseError:
    case ErrorCode::kSchemaError:
      return kIo;
    case ErrorCode::kNotApplicable:
      return kNotApplicable;
    case ErrorCode::kGroundSetTooLarge:
      return kTooLarge;
    case ErrorCode::kInvalidArgument:
      return kUsage;
    case ErrorCode::kIndexOutOfRange:
    case ErrorCode::kNegativeCost:
    case ErrorCode::kBothComputationCostsInfinite:
    case ErrorCode::kPinConflict:
    case ErrorCode::kPinViolation:
    case ErrorCode::kNotInGroundSet:
    case ErrorCode::kAlreadyInSet:
    case ErrorCode::kEmptyGraph:
    case ErrorCode::kSizeGuard:
    case ErrorCode::kTooManyEdges:
      return kBadInstance;
  }
  return kInternal;
}

int CmdSolve(const std::string& instance, const std::string& algo, double eps,
             const std::string& out) {
  const offload::TaskGraph g = offload::LoadInstance(instance);
  const offload::SolveResult r = offload::RunAlgorithm(g, algo, eps);
  std::printf("algo=%s total=%.12g certified=%s ms=%.3f\n",
              r.algorithm.c_str(), r.total_cost,
              r.optimal_certified ? "true" : "false", r.stats.wall_time_ms);
  if (!out.empty()) offload::WriteFile(out, offload::SolveResultJson(g, r));
  return kOk;
}

int CmdBench(const std::string& suite_path, const std::string& out,
             bool no_timing) {
  const offload::Suite suite = offload::LoadSuite(suite_path);
  offload::BenchOptions options;
  options.no_timing = no_timing;
  // LP files land next to the CSV.
  options.lp_prefix = out + ".";
  const auto rows = offload::RunSuite(suite, options);
  offload::WriteFile(out, offload::FormatCsv(rows));
  int failed = 0, plain = 0;
  for (const auto& row : rows) {
    if (row.algorithm.ends_with(":mean")) continue;
    ++plain;
    if (row.status != "ok" && row.status != "exported") ++failed;
  }
  std::printf("rows=%zu failed=%d out=%s\n", rows.size(), failed, out.c_str());
  return plain > 0 && failed == plain ? kAllFailed : kOk;
}

int CmdGen(offload::GenConfig cfg, const std::string& ratio,
           const std::string& out) {
  if (!ratio.empty()) cfg.ratio = offload::ParseRatio(ratio);
  if (cfg.name.empty()) cfg.name = "gen_s" + std::to_string(cfg.seed);
  const offload::TaskGraph g = offload::Generate(cfg);
  offload::SaveInstance(g, out);
  const offload::AssumptionReport rep = offload::CheckAssumption(g);
  std::printf("n=%d m=%d holds_strong=%s out=%s\n", g.num_nodes(),
              g.num_edges(), rep.holds_strong ? "true" : "false", out.c_str());
  return kOk;
}

int CmdReduce(const std::string& graph, int k, const std::string& out) {
  offload::CutInstance c = offload::ReadCutGraph(graph, k);
  const offload::ReducedInstance red = offload::MaxcutToOffloading(c);
  nlohmann::json doc =
      nlohmann::json::parse(offload::SerializeInstance(red.graph));
  doc["metadata"] = {{"source", "maxcut"},
                     {"k", c.k},
                     {"cut_nodes", c.n},
                     {"cut_edges", c.edges.size()},
                     {"threshold", red.threshold}};
  offload::WriteFile(out, doc.dump(2) + "\n");
  std::printf("n=%d m=%zu k=%d threshold=%.12g out=%s\n", c.n, c.edges.size(),
              c.k, red.threshold, out.c_str());
  return kOk;
}

int CmdValidateReduction(const std::string& graph) {
  const offload::CutInstance c = offload::ReadCutGraph(graph);
  const offload::ReductionReport rep = offload::ValidateReduction(c);
  std::printf("%s n=%d m=%d q*=%d O*=%.12g predicted=%.12g decisions=%s\n",
              rep.passed ? "PASS" : "FAIL", rep.n, rep.m, rep.max_cut,
              rep.offload_optimum, rep.predicted_optimum,
              rep.decisions_match ? "agree" : "disagree");
  return rep.passed ? kOk : kValidationFailed;
}

int CmdExportLp(const std::string& instance, const std::string& out) {
  const offload::TaskGraph g = offload::LoadInstance(instance);
  offload::ExportIlp(g, out);
  std::printf("out=%s\n", out.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge/cloud task offloading solver"};
  app.require_subcommand(1);

  std::string instance, algo = "sma", out;
  double eps = offload::kDefaultEps;
  CLI::App* solve = app.add_subcommand("solve", "Solve one instance");
  solve->add_option("--instance", instance, "Instance JSON")->required();
  solve->add_option("--algo", algo, "sma|greedy|mincut|brute")
      ->check(CLI::IsMember({"sma", "greedy", "mincut", "brute"}));
  solve->add_option("--eps", eps, "Wolfe tolerance")
      ->check(CLI::PositiveNumber);
  solve->add_option("--out", out, "Result JSON");

  std::string suite_path, csv_out;
  bool no_timing = false;
  CLI::App* bench = app.add_subcommand("bench", "Run a benchmark suite");
  bench->add_option("--suite", suite_path, "Suite JSON")->required();
  bench->add_option("--out", csv_out, "CSV output")->required();
  bench->add_flag("--no-timing", no_timing, "Write 0 for wall_time_ms");

  offload::GenConfig cfg;
  std::string ratio, gen_out;
  CLI::App* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("--nodes", cfg.n)->required();
  gen->add_option("--edges", cfg.m)->required();
  gen->add_option("--ratio", ratio, "A:B:C:D = ee:ec:ce:cc");
  gen->add_option("--seed", cfg.seed);
  gen->add_option("--name", cfg.name);
  gen->add_option("--comp-min", cfg.comp_range.first);
  gen->add_option("--comp-max", cfg.comp_range.second);
  gen->add_option("--comm-min", cfg.comm_range.first);
  gen->add_option("--comm-max", cfg.comm_range.second);
  gen->add_flag("--enforce-assumption", cfg.enforce_assumption);
  gen->add_option("--pin-fraction", cfg.pin_fraction);
  gen->add_option("--out", gen_out)->required();

  std::string graph, red_out;
  int k = 0;
  CLI::App* reduce = app.add_subcommand("reduce", "Hardness reductions");
  reduce->require_subcommand(1);
  CLI::App* maxcut = reduce->add_subcommand("maxcut", "MAX-CUT to offloading");
  maxcut->add_option("--graph", graph, "Edge list")->required();
  maxcut->add_option("--k", k, "Target cut size")->required();
  maxcut->add_option("--out", red_out)->required();

  std::string val_graph;
  CLI::App* validate = app.add_subcommand("validate", "Empirical checks");
  validate->require_subcommand(1);
  CLI::App* reduction_check =
      validate->add_subcommand("lemma2", "MAX-CUT reduction equivalence");
  reduction_check->add_option("--graph", val_graph, "Edge list")->required();

  std::string lp_instance, lp_out;
  CLI::App* export_lp =
      app.add_subcommand("export-lp", "Write the 0-1 program in LP format");
  export_lp->add_option("--instance", lp_instance)->required();
  export_lp->add_option("--out", lp_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return CmdSolve(instance, algo, eps, out);
    if (*bench) return CmdBench(suite_path, csv_out, no_timing);
    if (*gen) return CmdGen(cfg, ratio, gen_out);
    if (*maxcut) return CmdReduce(graph, k, red_out);
    if (*reduction_check) return CmdValidateReduction(val_graph);
    if (*export_lp) return CmdExportLp(lp_instance, lp_out);
  } catch (const offload::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return ExitFor(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kInternal;
  }
  return kUsage;
}
