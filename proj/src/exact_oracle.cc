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

#include "offload/exact_oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "offload/cost_engine.h"
#include "offload/error.h"

namespace offload {
namespace {

constexpr int kMaxChunkBits = 6;

void CheckGroundSize(const OffloadObjective& obj) {
  if (obj.ground_size() > kMaxBruteForceGround) {
    throw Error(ErrorCode::kGroundSetTooLarge,
                std::to_string(obj.ground_size()) + " free tasks (limit " +
                    std::to_string(kMaxBruteForceGround) + ")");
  }
}

std::vector<NodeId> Decode(const OffloadObjective& obj, uint32_t mask) {
  std::vector<NodeId> set;
  for (int i = 0; i < obj.ground_size(); ++i) {
    if (mask >> i & 1u) set.push_back(obj.ground_set()[i]);
  }
  return set;
}

struct Candidate {
  uint32_t mask = 0;
  double f = 0.0;
};

// PreferSubset on masks. Ground positions are in ascending id order, so for
// equal cardinality the set holding the lowest differing position is the
// lexicographically smaller one.
bool Better(const Candidate& a, const Candidate& b, double tol) {
  if (a.f < b.f - tol) return true;
  if (a.f > b.f + tol) return false;
  const int ca = std::popcount(a.mask);
  const int cb = std::popcount(b.mask);
  if (ca != cb) return ca < cb;
  const uint32_t diff = a.mask ^ b.mask;
  return diff != 0 && (a.mask & (diff & (~diff + 1))) != 0;
}

OracleResult Finish(const TaskGraph& g, const OffloadObjective& obj,
                    std::vector<NodeId> best) {
  OracleResult r;
  r.best_f = obj.Value(best);
  std::vector<NodeId> cloud(obj.base_cloud().begin(), obj.base_cloud().end());
  cloud.insert(cloud.end(), best.begin(), best.end());
  r.best_total = TotalCost(g, Partition::FromCloudSet(std::move(cloud))).total;
  r.best_set = std::move(best);
  r.subsets_evaluated = uint64_t{1} << obj.ground_size();
  return r;
}

std::string FormatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string XVar(NodeId v) { return "x_" + std::to_string(v); }
std::string YVar(const Edge& e, int k) {
  return "y_" + std::to_string(e.src) + "_" + std::to_string(e.dst) + "_" +
         std::to_string(k);
}

void AppendTerms(std::ostringstream& out, const std::vector<LinearTerm>& terms) {
  int on_line = 0;
  bool first = true;
  for (const LinearTerm& t : terms) {
    if (on_line == 6) {
      out << "\n   ";
      on_line = 0;
    }
    const double mag = std::abs(t.coef);
    if (first) {
      out << (t.coef < 0 ? "- " : "") << FormatNumber(mag) << ' ' << t.var;
      first = false;
    } else {
      out << (t.coef < 0 ? " - " : " + ") << FormatNumber(mag) << ' ' << t.var;
    }
    ++on_line;
  }
}

}  // namespace

OracleResult BruteForce(const TaskGraph& g) {
  const OffloadObjective obj(g);
  CheckGroundSize(obj);
  const int k = obj.ground_size();
  const int chunk_bits = std::min(k, kMaxChunkBits);
  const int low_bits = k - chunk_bits;
  const int num_chunks = 1 << chunk_bits;
  const double tol = obj.tie_tolerance();
  std::vector<Candidate> chunk_best(num_chunks);

#pragma omp parallel for schedule(dynamic)
  for (int chunk = 0; chunk < num_chunks; ++chunk) {
    const uint32_t high = static_cast<uint32_t>(chunk) << low_bits;
    std::vector<NodeId> start = Decode(obj, high);
    std::vector<Side> sides = obj.SidesFor(start);
    Candidate cur{high, obj.Value(start)};
    Candidate best = cur;
    const uint64_t steps = uint64_t{1} << low_bits;
    for (uint64_t i = 1; i < steps; ++i) {
      const int bit = std::countr_zero(i);
      const NodeId v = obj.ground_set()[bit];
      if (sides[v] == Side::kEdge) {
        cur.f += obj.Marginal(v, sides);
        sides[v] = Side::kCloud;
      } else {
        sides[v] = Side::kEdge;
        cur.f -= obj.Marginal(v, sides);
      }
      cur.mask ^= 1u << bit;
      if (Better(cur, best, tol)) best = cur;
    }
    chunk_best[chunk] = best;
  }

  Candidate best = chunk_best.front();
  for (const Candidate& c : chunk_best) {
    if (Better(c, best, tol)) best = c;
  }
  return Finish(g, obj, Decode(obj, best.mask));
}

OracleResult BruteForceReference(const TaskGraph& g) {
  const OffloadObjective obj(g);
  CheckGroundSize(obj);
  const double tol = obj.tie_tolerance();
  std::vector<NodeId> best;
  double best_f = 0.0;
  const uint64_t total = uint64_t{1} << obj.ground_size();
  for (uint64_t mask = 1; mask < total; ++mask) {
    std::vector<NodeId> set = Decode(obj, static_cast<uint32_t>(mask));
    const double f = obj.Value(set);
    if (PreferSubset(f, set, best_f, best, tol)) {
      best = std::move(set);
      best_f = f;
    }
  }
  return Finish(g, obj, std::move(best));
}

LinearProgram BuildIlp(const TaskGraph& g) {
  LinearProgram lp;
  double constant = 0.0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const NodeCost& c = g.node(v);
    const std::string x = XVar(v);
    switch (g.pin(v)) {
      case Pin::kFree:
        constant += c.w_edge + c.transfer;
        lp.objective.push_back({x, c.w_cloud - c.w_edge - c.transfer});
        lp.bounds.push_back({x, 0.0, 1.0});
        break;
      case Pin::kEdge:
        constant += c.w_edge + c.transfer;
        lp.bounds.push_back({x, 0.0, 0.0});
        break;
      case Pin::kCloud:
        constant += c.w_cloud;
        lp.bounds.push_back({x, 1.0, 1.0});
        break;
    }
    lp.binaries.push_back(x);
  }
  for (const Edge& e : g.edges()) {
    const EdgeCost& l = e.cost;
    const std::string xi = XVar(e.src);
    const std::string xj = XVar(e.dst);
    const std::string y2 = YVar(e, 2);  // (1 - x_i) x_j
    const std::string y3 = YVar(e, 3);  // x_i (1 - x_j)
    const std::string y4 = YVar(e, 4);  // x_i x_j
    constant += l.ee;
    lp.objective.push_back({y2, l.ec - l.ee});
    lp.objective.push_back({y3, l.ce - l.ee});
    lp.objective.push_back({y4, l.cc - l.ee});
    lp.constraints.push_back({y2 + "_a", {{y2, 1}, {xi, 1}, {xj, -1}}, ">=", 0});
    lp.constraints.push_back({y2 + "_b", {{y2, 1}, {xi, 1}}, "<=", 1});
    lp.constraints.push_back({y2 + "_c", {{y2, 1}, {xj, -1}}, "<=", 0});
    lp.constraints.push_back({y3 + "_a", {{y3, 1}, {xi, -1}, {xj, 1}}, ">=", 0});
    lp.constraints.push_back({y3 + "_b", {{y3, 1}, {xi, -1}}, "<=", 0});
    lp.constraints.push_back({y3 + "_c", {{y3, 1}, {xj, 1}}, "<=", 1});
    lp.constraints.push_back(
        {y4 + "_a", {{y4, 1}, {xi, -1}, {xj, -1}}, ">=", -1});
    lp.constraints.push_back({y4 + "_b", {{y4, 1}, {xi, -1}}, "<=", 0});
    lp.constraints.push_back({y4 + "_c", {{y4, 1}, {xj, -1}}, "<=", 0});
    lp.bounds.push_back({y2, 0.0, 1.0});
    lp.bounds.push_back({y3, 0.0, 1.0});
    lp.bounds.push_back({y4, 0.0, 1.0});
  }
  lp.objective.push_back({"const_one", constant});
  lp.bounds.push_back({"const_one", 1.0, 1.0});
  return lp;
}

std::map<std::string, double> IlpAssignment(const TaskGraph& g,
                                            const Partition& p) {
  const std::vector<Side> sides = p.Sides(g.num_nodes());
  std::map<std::string, double> values;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    values[XVar(v)] = sides[v] == Side::kCloud ? 1.0 : 0.0;
  }
  for (const Edge& e : g.edges()) {
    const double xi = sides[e.src] == Side::kCloud ? 1.0 : 0.0;
    const double xj = sides[e.dst] == Side::kCloud ? 1.0 : 0.0;
    values[YVar(e, 2)] = (1.0 - xi) * xj;
    values[YVar(e, 3)] = xi * (1.0 - xj);
    values[YVar(e, 4)] = xi * xj;
  }
  values["const_one"] = 1.0;
  return values;
}

std::string LinearProgram::ToLpString() const {
  std::ostringstream out;
  out << "Minimize\n obj: ";
  AppendTerms(out, objective);
  out << "\nSubject To\n";
  for (const LinearConstraint& c : constraints) {
    out << ' ' << c.name << ": ";
    AppendTerms(out, c.terms);
    out << ' ' << c.sense << ' ' << FormatNumber(c.rhs) << '\n';
  }
  out << "Bounds\n";
  for (const VariableBounds& b : bounds) {
    if (b.lo == b.hi) {
      out << ' ' << b.var << " = " << FormatNumber(b.lo) << '\n';
    } else {
      out << ' ' << FormatNumber(b.lo) << " <= " << b.var
          << " <= " << FormatNumber(b.hi) << '\n';
    }
  }
  out << "Binary\n";
  for (size_t i = 0; i < binaries.size(); ++i) {
    out << (i % 10 == 0 ? (i == 0 ? " " : "\n ") : " ") << binaries[i];
  }
  out << "\nEnd\n";
  return out.str();
}

double LinearProgram::EvaluateObjective(
    const std::map<std::string, double>& values) const {
  double total = 0.0;
  for (const LinearTerm& t : objective) total += t.coef * values.at(t.var);
  return total;
}

bool LinearProgram::IsFeasible(const std::map<std::string, double>& values,
                               double tol) const {
  for (const LinearConstraint& c : constraints) {
    double lhs = 0.0;
    for (const LinearTerm& t : c.terms) lhs += t.coef * values.at(t.var);
    if (c.sense == "<=" && lhs > c.rhs + tol) return false;
    if (c.sense == ">=" && lhs < c.rhs - tol) return false;
    if (c.sense == "=" && std::abs(lhs - c.rhs) > tol) return false;
  }
  for (const VariableBounds& b : bounds) {
    const double v = values.at(b.var);
    if (v < b.lo - tol || v > b.hi + tol) return false;
  }
  for (const std::string& name : binaries) {
    const double v = values.at(name);
    if (std::abs(v) > tol && std::abs(v - 1.0) > tol) return false;
  }
  return true;
}

void ExportIlp(const TaskGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path);
  out << "\\ offload instance " << (g.name().empty() ? "unnamed" : g.name())
      << "\n";
  out << BuildIlp(g).ToLpString();
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

}  // namespace offload
