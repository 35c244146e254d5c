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

#include "offload/datagen_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "offload/error.h"

namespace offload {
namespace {

using nlohmann::json;

// Hand-rolled draws: the std distributions are not specified bit-for-bit,
// and instance files must match across standard libraries.
double Uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

// Uniform on [lo, hi] by rejection.
int64_t UniformInt(std::mt19937_64& rng, int64_t lo, int64_t hi) {
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  uint64_t x = rng();
  while (x >= limit) x = rng();
  return lo + static_cast<int64_t>(x % span);
}

EdgeCost DrawEdgeCost(const GenConfig& cfg, std::mt19937_64& rng) {
  const auto [lo, hi] = cfg.comm_range;
  if (cfg.ratio) {
    const auto& r = *cfg.ratio;
    const double c = Uniform(rng, lo, hi);
    return {c * r[0], c * r[1], c * r[2], c * r[3]};
  }
  if (cfg.enforce_assumption) {
    EdgeCost l;
    l.ec = Uniform(rng, lo, hi);
    l.ce = Uniform(rng, lo, hi);
    const double cap = std::min(l.ec, l.ce);
    l.ee = Uniform(rng, 0.0, cap);
    l.cc = Uniform(rng, 0.0, cap);
    return l;
  }
  EdgeCost l;
  l.ee = Uniform(rng, lo, hi);
  l.ec = Uniform(rng, lo, hi);
  l.ce = Uniform(rng, lo, hi);
  l.cc = Uniform(rng, lo, hi);
  return l;
}

std::vector<NodeCost> DrawNodeCosts(const GenConfig& cfg, int n,
                                    std::mt19937_64& rng) {
  std::vector<NodeCost> nodes(n);
  for (NodeCost& c : nodes) {
    c.w_edge = Uniform(rng, cfg.comp_range.first, cfg.comp_range.second);
    c.w_cloud = Uniform(rng, cfg.comp_range.first, cfg.comp_range.second);
  }
  return nodes;
}

std::vector<Pin> DrawPins(const GenConfig& cfg, int n, std::mt19937_64& rng) {
  std::vector<Pin> pins(n, Pin::kFree);
  const int count = static_cast<int>(std::floor(cfg.pin_fraction * n));
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < count; ++i) {
    std::swap(order[i], order[UniformInt(rng, i, n - 1)]);
    pins[order[i]] = Pin::kEdge;
  }
  return pins;
}

[[noreturn]] void SchemaError(const std::string& pointer,
                              const std::string& what) {
  throw Error(ErrorCode::kSchemaError, pointer + ": " + what, pointer);
}

const json& Require(const json& obj, const std::string& key,
                    const std::string& pointer) {
  if (!obj.is_object() || !obj.contains(key)) {
    SchemaError(pointer + "/" + key, "missing");
  }
  return obj.at(key);
}

double NumberOrInf(const json& v, const std::string& pointer) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && v.get<std::string>() == "inf") return kInfCost;
  SchemaError(pointer, "expected a number or \"inf\"");
}

double Number(const json& v, const std::string& pointer) {
  if (!v.is_number()) SchemaError(pointer, "expected a number");
  return v.get<double>();
}

int64_t Integer(const json& v, const std::string& pointer) {
  if (!v.is_number_integer()) SchemaError(pointer, "expected an integer");
  return v.get<int64_t>();
}

json CostJson(double c) {
  if (std::isinf(c)) return "inf";
  return c;
}

std::string_view PinName(Pin p) {
  switch (p) {
    case Pin::kFree: return "free";
    case Pin::kEdge: return "edge";
    case Pin::kCloud: return "cloud";
  }
  return "free";
}

}  // namespace

std::array<double, 4> ParseRatio(std::string_view text) {
  std::array<double, 4> r{};
  size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    const size_t end = i < 3 ? text.find(':', pos) : text.size();
    if (end == std::string_view::npos) break;
    const std::string part(text.substr(pos, end - pos));
    char* stop = nullptr;
    r[i] = std::strtod(part.c_str(), &stop);
    if (part.empty() || *stop != '\0') {
      throw Error(ErrorCode::kInvalidArgument,
                  "ratio must look like A:B:C:D, got '" + std::string(text) +
                      "'");
    }
    pos = end + 1;
    if (i == 3) return r;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "ratio must look like A:B:C:D, got '" + std::string(text) + "'");
}

void ValidateGenConfig(const GenConfig& cfg) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, what);
  };
  if (cfg.n < 0) fail("node count must be >= 0");
  if (cfg.m < 0) fail("edge count must be >= 0");
  if (cfg.ratio) {
    for (double r : *cfg.ratio) {
      if (!(r > 0.0) || std::isinf(r)) fail("ratio components must be > 0");
    }
  }
  for (const auto& [lo, hi] : {cfg.comp_range, cfg.comm_range}) {
    if (!(lo >= 0.0) || !(lo <= hi) || std::isinf(hi)) {
      fail("cost ranges need 0 <= lo <= hi < inf");
    }
  }
  if (!(cfg.pin_fraction >= 0.0 && cfg.pin_fraction < 1.0)) {
    fail("pin_fraction must be in [0, 1)");
  }
}

TaskGraph Generate(const GenConfig& cfg) {
  ValidateGenConfig(cfg);
  const int n = cfg.n;
  const int64_t max_edges = int64_t{n} * (n - 1);
  if (cfg.m > max_edges) {
    throw Error(ErrorCode::kTooManyEdges,
                std::to_string(cfg.m) + " edges requested, at most " +
                    std::to_string(max_edges) + " ordered pairs");
  }
  std::mt19937_64 rng(cfg.seed);
  std::vector<NodeCost> nodes = DrawNodeCosts(cfg, n, rng);

  // Ordered pairs (i, j), i != j, encoded as i * n + j.
  std::vector<int64_t> picked;
  picked.reserve(cfg.m);
  if (cfg.m * 2 > max_edges) {
    std::vector<int64_t> all;
    all.reserve(max_edges);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) all.push_back(int64_t{i} * n + j);
      }
    }
    for (int64_t i = 0; i < cfg.m; ++i) {
      std::swap(all[i], all[UniformInt(rng, i, max_edges - 1)]);
      picked.push_back(all[i]);
    }
  } else {
    std::unordered_set<int64_t> seen;
    while (static_cast<int64_t>(picked.size()) < cfg.m) {
      const int i = static_cast<int>(UniformInt(rng, 0, n - 1));
      const int j = static_cast<int>(UniformInt(rng, 0, n - 1));
      if (i == j) continue;
      const int64_t key = int64_t{i} * n + j;
      if (seen.insert(key).second) picked.push_back(key);
    }
  }

  std::vector<Edge> edges;
  edges.reserve(picked.size());
  for (int64_t key : picked) {
    edges.push_back({static_cast<NodeId>(key / n), static_cast<NodeId>(key % n),
                     DrawEdgeCost(cfg, rng)});
  }
  std::vector<Pin> pins = DrawPins(cfg, n, rng);
  std::string name = cfg.name.empty()
                         ? "gen_n" + std::to_string(n) + "_m" +
                               std::to_string(cfg.m) + "_s" +
                               std::to_string(cfg.seed)
                         : cfg.name;
  return BuildGraph(std::move(name), std::move(nodes), std::move(edges),
                    std::move(pins));
}

EdgeList ReadEdgeList(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  EdgeList list;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string a, b;
    if (!(tokens >> a) || a.front() == '#') continue;
    int64_t u = 0, v = 0;
    auto parse = [&](const std::string& tok, int64_t& out) {
      const auto [ptr, ec] =
          std::from_chars(tok.data(), tok.data() + tok.size(), out);
      return ec == std::errc() && ptr == tok.data() + tok.size();
    };
    if (!(tokens >> b) || !parse(a, u) || !parse(b, v)) {
      throw Error(ErrorCode::kParseError,
                  path + ":" + std::to_string(line_no) +
                      ": expected two integer node ids",
                  std::to_string(line_no));
    }
    list.pairs.emplace_back(u, v);
  }
  if (in.bad()) throw Error(ErrorCode::kIoError, "read failed for " + path);
  return list;
}

TaskGraph LoadSnap(const std::string& path, int take_nodes,
                   const GenConfig& cfg) {
  ValidateGenConfig(cfg);
  if (take_nodes < 0) {
    throw Error(ErrorCode::kInvalidArgument, "take_nodes must be >= 0");
  }
  const EdgeList list = ReadEdgeList(path);
  std::unordered_map<int64_t, NodeId> dense;
  for (const auto& [u, v] : list.pairs) {
    for (int64_t id : {u, v}) {
      if (static_cast<int>(dense.size()) >= take_nodes) break;
      dense.try_emplace(id, static_cast<NodeId>(dense.size()));
    }
  }
  const int n = static_cast<int>(dense.size());
  std::mt19937_64 rng(cfg.seed);
  std::vector<NodeCost> nodes = DrawNodeCosts(cfg, n, rng);
  std::vector<Edge> edges;
  for (const auto& [u, v] : list.pairs) {
    const auto iu = dense.find(u);
    const auto iv = dense.find(v);
    if (iu == dense.end() || iv == dense.end()) continue;
    edges.push_back({iu->second, iv->second, DrawEdgeCost(cfg, rng)});
  }
  std::vector<Pin> pins = DrawPins(cfg, n, rng);
  std::string name = cfg.name;
  if (name.empty()) {
    name = path.substr(path.find_last_of('/') + 1) + "_" +
           std::to_string(take_nodes);
  }
  return BuildGraph(std::move(name), std::move(nodes), std::move(edges),
                    std::move(pins));
}

std::string SerializeInstance(const TaskGraph& g) {
  json doc;
  doc["name"] = g.name();
  json nodes = json::array();
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const NodeCost& c = g.node(v);
    nodes.push_back({{"id", v},
                     {"w_edge", CostJson(c.w_edge)},
                     {"w_cloud", CostJson(c.w_cloud)},
                     {"transfer", c.transfer},
                     {"pin", PinName(g.pin(v))}});
  }
  doc["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const Edge& e : g.edges()) {
    edges.push_back({{"src", e.src},
                     {"dst", e.dst},
                     {"l", {e.cost.ee, e.cost.ec, e.cost.ce, e.cost.cc}}});
  }
  doc["edges"] = std::move(edges);
  return doc.dump(1) + "\n";
}

TaskGraph ParseInstance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what(), std::to_string(e.byte));
  }
  if (!doc.is_object()) SchemaError("", "expected an object");
  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) SchemaError("/name", "expected a string");
    name = doc["name"].get<std::string>();
  }

  const json& jnodes = Require(doc, "nodes", "");
  if (!jnodes.is_array()) SchemaError("/nodes", "expected an array");
  const json& jedges = Require(doc, "edges", "");
  if (!jedges.is_array()) SchemaError("/edges", "expected an array");

  const int n = static_cast<int>(jnodes.size());
  std::vector<NodeCost> nodes(n);
  std::vector<Pin> pins(n, Pin::kFree);
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    const std::string at = "/nodes/" + std::to_string(i);
    const json& jn = jnodes[i];
    if (!jn.is_object()) SchemaError(at, "expected an object");
    const int64_t id = Integer(Require(jn, "id", at), at + "/id");
    if (id < 0 || id >= n || seen[id]) {
      SchemaError(at + "/id", "ids must be a permutation of 0..n-1");
    }
    seen[id] = true;
    NodeCost c;
    c.w_edge = NumberOrInf(Require(jn, "w_edge", at), at + "/w_edge");
    c.w_cloud = NumberOrInf(Require(jn, "w_cloud", at), at + "/w_cloud");
    if (jn.contains("transfer")) {
      c.transfer = Number(jn["transfer"], at + "/transfer");
    }
    nodes[id] = c;
    if (jn.contains("pin")) {
      const json& jp = jn["pin"];
      const std::string p = jp.is_string() ? jp.get<std::string>() : "";
      if (p == "free") {
        pins[id] = Pin::kFree;
      } else if (p == "edge") {
        pins[id] = Pin::kEdge;
      } else if (p == "cloud") {
        pins[id] = Pin::kCloud;
      } else {
        SchemaError(at + "/pin", "expected \"free\", \"edge\" or \"cloud\"");
      }
    }
  }

  std::vector<Edge> edges;
  edges.reserve(jedges.size());
  for (size_t i = 0; i < jedges.size(); ++i) {
    const std::string at = "/edges/" + std::to_string(i);
    const json& je = jedges[i];
    if (!je.is_object()) SchemaError(at, "expected an object");
    Edge e;
    e.src = static_cast<NodeId>(Integer(Require(je, "src", at), at + "/src"));
    e.dst = static_cast<NodeId>(Integer(Require(je, "dst", at), at + "/dst"));
    const json& jl = Require(je, "l", at);
    if (!jl.is_array() || jl.size() != 4) {
      SchemaError(at + "/l", "expected [l_ee, l_ec, l_ce, l_cc]");
    }
    e.cost.ee = Number(jl[0], at + "/l/0");
    e.cost.ec = Number(jl[1], at + "/l/1");
    e.cost.ce = Number(jl[2], at + "/l/2");
    e.cost.cc = Number(jl[3], at + "/l/3");
    edges.push_back(e);
  }
  return BuildGraph(std::move(name), std::move(nodes), std::move(edges),
                    std::move(pins));
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "read failed for " + path);
  return buf.str();
}

void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path);
  out << contents;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

void SaveInstance(const TaskGraph& g, const std::string& path) {
  WriteFile(path, SerializeInstance(g));
}

TaskGraph LoadInstance(const std::string& path) {
  return ParseInstance(ReadFile(path));
}

}  // namespace offload
