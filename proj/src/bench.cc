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

#include "offload/bench.h"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"
#include "offload/baselines.h"
#include "offload/cost_engine.h"
#include "offload/error.h"
#include "offload/exact_oracle.h"

namespace offload {
namespace {

using nlohmann::json;

[[noreturn]] void SchemaError(const std::string& pointer,
                              const std::string& what) {
  throw Error(ErrorCode::kSchemaError, pointer + ": " + what, pointer);
}

std::pair<double, double> Range(const json& v, const std::string& at) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number()) {
    SchemaError(at, "expected [lo, hi]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

GenConfig ParseGen(const json& j, const std::string& at) {
  GenConfig g;
  auto number = [&](const char* key) {
    if (!j[key].is_number()) SchemaError(at + "/" + key, "expected a number");
    return j[key].get<double>();
  };
  if (j.contains("nodes")) g.n = static_cast<int>(number("nodes"));
  if (j.contains("edges")) g.m = static_cast<int64_t>(number("edges"));
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      SchemaError(at + "/seed", "expected a non-negative integer");
    }
    g.seed = j["seed"].get<uint64_t>();
  }
  if (j.contains("ratio") && !j["ratio"].is_null()) {
    const json& r = j["ratio"];
    if (r.is_string()) {
      g.ratio = ParseRatio(r.get<std::string>());
    } else if (r.is_array() && r.size() == 4) {
      std::array<double, 4> v{};
      for (int i = 0; i < 4; ++i) {
        if (!r[i].is_number()) SchemaError(at + "/ratio", "expected numbers");
        v[i] = r[i].get<double>();
      }
      g.ratio = v;
    } else {
      SchemaError(at + "/ratio", "expected \"A:B:C:D\" or a 4-array");
    }
  }
  if (j.contains("comp_range")) {
    g.comp_range = Range(j["comp_range"], at + "/comp_range");
  }
  if (j.contains("comm_range")) {
    g.comm_range = Range(j["comm_range"], at + "/comm_range");
  }
  if (j.contains("enforce_assumption")) {
    if (!j["enforce_assumption"].is_boolean()) {
      SchemaError(at + "/enforce_assumption", "expected a boolean");
    }
    g.enforce_assumption = j["enforce_assumption"].get<bool>();
  }
  if (j.contains("pin_fraction")) g.pin_fraction = number("pin_fraction");
  ValidateGenConfig(g);
  return g;
}

std::string ResolvePath(const std::string& base_dir, const std::string& p) {
  if (base_dir.empty() || std::filesystem::path(p).is_absolute()) return p;
  return (std::filesystem::path(base_dir) / p).string();
}

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// RFC 4180 quoting for free-text fields.
std::string CsvField(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string StatusFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kNotApplicable: return "not_applicable";
    case ErrorCode::kGroundSetTooLarge: return "ground_set_too_large";
    default: return "error";
  }
}

struct Job {
  int entry = 0;
  int rep = 0;
};

double ElapsedMs(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

Suite ParseSuite(std::string_view json_text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what(), std::to_string(e.byte));
  }
  if (!doc.is_object()) SchemaError("", "expected an object");
  Suite suite;
  if (doc.contains("repetitions")) {
    if (!doc["repetitions"].is_number_integer() ||
        doc["repetitions"].get<int>() < 1) {
      SchemaError("/repetitions", "expected a positive integer");
    }
    suite.repetitions = doc["repetitions"].get<int>();
  }
  if (doc.contains("eps")) {
    if (!doc["eps"].is_number() || !(doc["eps"].get<double>() > 0.0)) {
      SchemaError("/eps", "expected a positive number");
    }
    suite.eps = doc["eps"].get<double>();
  }
  if (doc.contains("algorithms")) {
    const json& algos = doc["algorithms"];
    if (!algos.is_array()) SchemaError("/algorithms", "expected an array");
    for (size_t i = 0; i < algos.size(); ++i) {
      const std::string at = "/algorithms/" + std::to_string(i);
      if (!algos[i].is_string()) SchemaError(at, "expected a string");
      const std::string a = algos[i].get<std::string>();
      if (a != "sma" && a != "greedy" && a != "mincut" && a != "brute" &&
          a != "ilp-export") {
        SchemaError(at, "unknown algorithm '" + a + "'");
      }
      suite.algorithms.push_back(a);
    }
  }
  if (doc.contains("instances")) {
    const json& list = doc["instances"];
    if (!list.is_array()) SchemaError("/instances", "expected an array");
    for (size_t i = 0; i < list.size(); ++i) {
      const std::string at = "/instances/" + std::to_string(i);
      const json& j = list[i];
      if (!j.is_object()) SchemaError(at, "expected an object");
      SuiteEntry e;
      if (j.contains("name")) {
        if (!j["name"].is_string()) SchemaError(at + "/name", "expected a string");
        e.name = j["name"].get<std::string>();
      }
      const std::string kind =
          j.value("kind", std::string(j.contains("path") ? "file" : "generate"));
      if (kind == "generate") {
        e.source = InstanceSource::kGenerate;
        e.gen = ParseGen(j, at);
      } else if (kind == "snap" || kind == "file") {
        if (!j.contains("path") || !j["path"].is_string()) {
          SchemaError(at + "/path", "expected a string");
        }
        e.path = ResolvePath(base_dir, j["path"].get<std::string>());
        if (kind == "snap") {
          e.source = InstanceSource::kSnap;
          e.gen = ParseGen(j, at);
          if (!j.contains("take_nodes") || !j["take_nodes"].is_number_integer()) {
            SchemaError(at + "/take_nodes", "expected an integer");
          }
          e.take_nodes = j["take_nodes"].get<int>();
        } else {
          e.source = InstanceSource::kFile;
        }
      } else {
        SchemaError(at + "/kind", "expected generate, snap or file");
      }
      if (e.name.empty()) e.name = "instance" + std::to_string(i);
      e.gen.name = e.name;
      suite.instances.push_back(std::move(e));
    }
  }
  return suite;
}

Suite LoadSuite(const std::string& path) {
  return ParseSuite(ReadFile(path),
                    std::filesystem::path(path).parent_path().string());
}

int ResolveThreads(int requested) {
  int threads = requested;
  if (threads <= 0) {
#ifdef _OPENMP
    threads = omp_get_max_threads();
#else
    threads = 1;
#endif
  }
  if (const char* cap = std::getenv("OFFLOAD_THREADS")) {
    const int limit = std::atoi(cap);
    if (limit > 0) threads = std::min(threads, limit);
  }
  return std::max(threads, 1);
}

SolveResult RunAlgorithm(const TaskGraph& g, std::string_view algorithm,
                         double eps) {
  if (algorithm == "sma") return Solve(g, eps);
  if (algorithm == "greedy") return GreedyLocalSearch(g);
  if (algorithm == "mincut") return SolveMincut(g);
  if (algorithm == "brute") {
    const auto start = std::chrono::steady_clock::now();
    const OracleResult oracle = BruteForce(g);
    const double ms = ElapsedMs(start);
    const OffloadObjective obj(g);
    SolveResult r;
    r.algorithm = "brute";
    FillSolution(obj, oracle.best_set, r);
    r.assumption = CheckAssumption(g);
    r.optimal_certified = true;
    r.stats.oracle_calls = static_cast<int64_t>(oracle.subsets_evaluated);
    r.stats.wall_time_ms = ms;
    return r;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown algorithm '" + std::string(algorithm) + "'");
}

std::vector<BenchRecord> RunSuite(const Suite& suite,
                                  const BenchOptions& options) {
  std::vector<Job> jobs;
  for (int e = 0; e < static_cast<int>(suite.instances.size()); ++e) {
    for (int r = 0; r < suite.repetitions; ++r) jobs.push_back({e, r});
  }
  const int num_algos = static_cast<int>(suite.algorithms.size());
  std::vector<BenchRecord> rows(jobs.size() * num_algos);
  const int threads = ResolveThreads(options.threads);

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int j = 0; j < static_cast<int>(jobs.size()); ++j) {
    const SuiteEntry& entry = suite.instances[jobs[j].entry];
    const int rep = jobs[j].rep;
    uint64_t seed = 0;
    TaskGraph g;
    std::string load_error;
    try {
      GenConfig cfg = entry.gen;
      cfg.seed = entry.gen.seed + static_cast<uint64_t>(rep);
      switch (entry.source) {
        case InstanceSource::kGenerate:
          seed = cfg.seed;
          g = Generate(cfg);
          break;
        case InstanceSource::kSnap:
          seed = cfg.seed;
          g = LoadSnap(entry.path, entry.take_nodes, cfg);
          break;
        case InstanceSource::kFile:
          g = LoadInstance(entry.path);
          break;
      }
    } catch (const std::exception& e) {
      load_error = e.what();
    }
    const AssumptionReport report = CheckAssumption(g);
    for (int a = 0; a < num_algos; ++a) {
      BenchRecord& row = rows[static_cast<size_t>(j) * num_algos + a];
      row.instance = entry.name;
      row.n = g.num_nodes();
      row.m = g.num_edges();
      row.algorithm = suite.algorithms[a];
      row.assumption_strong = report.holds_strong;
      row.seed = seed;
      if (!load_error.empty()) {
        row.status = "error";
        continue;
      }
      if (row.algorithm == "ilp-export") {
        if (!options.lp_prefix.empty()) {
          try {
            ExportIlp(g, options.lp_prefix + entry.name + "_r" +
                             std::to_string(rep) + ".lp");
          } catch (const Error&) {
            row.status = "error";
            continue;
          }
        }
        row.status = "exported";
        continue;
      }
      try {
        const SolveResult r = RunAlgorithm(g, row.algorithm, suite.eps);
        row.total_cost = r.total_cost;
        row.f_min = r.f_min;
        row.wall_time_ms = options.no_timing ? 0.0 : r.stats.wall_time_ms;
        row.certified = r.optimal_certified;
        row.status = "ok";
      } catch (const Error& e) {
        row.status = StatusFor(e);
      } catch (const std::exception&) {
        row.status = "error";
      }
    }
  }

  // Rows ordered by (entry, algorithm, repetition); means per (entry,
  // algorithm) over the successful repetitions follow.
  std::vector<BenchRecord> ordered;
  ordered.reserve(rows.size());
  for (int e = 0; e < static_cast<int>(suite.instances.size()); ++e) {
    for (int a = 0; a < num_algos; ++a) {
      for (size_t j = 0; j < jobs.size(); ++j) {
        if (jobs[j].entry == e) ordered.push_back(rows[j * num_algos + a]);
      }
    }
  }
  std::vector<BenchRecord> means;
  for (int e = 0; e < static_cast<int>(suite.instances.size()); ++e) {
    for (int a = 0; a < num_algos; ++a) {
      BenchRecord mean;
      mean.instance = suite.instances[e].name;
      mean.algorithm = suite.algorithms[a] + ":mean";
      mean.seed = suite.instances[e].gen.seed;
      mean.assumption_strong = true;
      mean.certified = true;
      int ok = 0, total = 0;
      for (size_t j = 0; j < jobs.size(); ++j) {
        if (jobs[j].entry != e) continue;
        const BenchRecord& row = rows[j * num_algos + a];
        if (total == 0) {
          mean.n = row.n;
          mean.m = row.m;
        }
        ++total;
        if (row.status != "ok" && row.status != "exported") continue;
        ++ok;
        mean.total_cost += row.total_cost;
        mean.f_min += row.f_min;
        mean.wall_time_ms += row.wall_time_ms;
        mean.assumption_strong &= row.assumption_strong;
        mean.certified &= row.certified;
      }
      if (ok > 0) {
        mean.total_cost /= ok;
        mean.f_min /= ok;
        mean.wall_time_ms /= ok;
      } else {
        mean.assumption_strong = false;
        mean.certified = false;
      }
      mean.status = ok == total ? "ok" : (ok == 0 ? "failed" : "partial");
      means.push_back(std::move(mean));
    }
  }
  ordered.insert(ordered.end(), means.begin(), means.end());
  return ordered;
}

std::string FormatCsv(const std::vector<BenchRecord>& records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const BenchRecord& r : records) {
    out += CsvField(r.instance) + ',' + std::to_string(r.n) + ',' + std::to_string(r.m) +
           ',' + r.algorithm + ',' + Num(r.total_cost) + ',' + Num(r.f_min) +
           ',' + Num(r.wall_time_ms) + ',' +
           (r.assumption_strong ? "true" : "false") + ',' +
           (r.certified ? "true" : "false") + ',' + std::to_string(r.seed) +
           ',' + r.status + '\n';
  }
  return out;
}

std::string SolveResultJson(const TaskGraph& g, const SolveResult& r) {
  json violations = json::array();
  for (const AssumptionViolation& v : r.assumption.violations) {
    violations.push_back(
        {{"edge", v.edge}, {"inequality", InequalityName(v.which)}});
  }
  const CostBreakdown b = TotalCost(g, r.partition);
  json doc = {
      {"instance", g.name()},
      {"algorithm", r.algorithm},
      {"cloud_set", r.partition.cloud_set},
      {"f_min", r.f_min},
      {"total_cost", r.total_cost},
      {"gamma_empty", r.gamma_empty},
      {"optimal_certified", r.optimal_certified},
      {"assumption",
       {{"holds_weak", r.assumption.holds_weak},
        {"holds_strong", r.assumption.holds_strong},
        {"holds_submodular", r.assumption.holds_submodular},
        {"violations", violations}}},
      {"breakdown",
       {{"comp", b.comp},
        {"comm_inter", b.comm_inter},
        {"comm_intra_edge", b.comm_intra_edge},
        {"comm_intra_cloud", b.comm_intra_cloud},
        {"total", b.total}}},
      {"stats",
       {{"major_iterations", r.stats.major_iterations},
        {"minor_iterations", r.stats.minor_iterations},
        {"oracle_calls", r.stats.oracle_calls},
        {"wall_time_ms", r.stats.wall_time_ms},
        {"iteration_limited", r.stats.iteration_limited}}},
  };
  return doc.dump(2) + "\n";
}

}  // namespace offload
