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

#include "offload/baselines.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

#include "offload/cost_engine.h"
#include "offload/error.h"

namespace offload {
namespace {

constexpr double kImprovementTol = 1e-9;
constexpr double kHomogeneityTol = 1e-9;

double ElapsedMs(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

// Change in total cost from moving v to the other side.
double FlipDelta(const OffloadObjective& obj, NodeId v,
                 std::vector<Side>& sides) {
  if (sides[v] == Side::kEdge) return obj.Marginal(v, sides);
  sides[v] = Side::kEdge;
  const double d = -obj.Marginal(v, sides);
  sides[v] = Side::kCloud;
  return d;
}

}  // namespace

FlowNetwork::FlowNetwork(int num_nodes) : adj_(num_nodes) {}

void FlowNetwork::AddArc(int from, int to, double capacity) {
  if (!(capacity >= 0.0) || std::isinf(capacity)) {
    throw Error(ErrorCode::kInvalidArgument, "arc capacity must be finite");
  }
  if (from < 0 || from >= num_nodes() || to < 0 || to >= num_nodes()) {
    throw Error(ErrorCode::kIndexOutOfRange, "arc endpoint out of range");
  }
  const int a = static_cast<int>(adj_[from].size());
  const int b = static_cast<int>(adj_[to].size()) + (from == to ? 1 : 0);
  adj_[from].push_back({to, b, capacity, capacity});
  adj_[to].push_back({from, a, 0.0, 0.0});
}

double FlowNetwork::MaxFlow(int source, int sink) {
  const int n = num_nodes();
  double total_cap = 0.0;
  for (const Arc& a : adj_[source]) total_cap += a.capacity;
  tol_ = 1e-12 * std::max(1.0, total_cap);

  std::vector<int> height(n, 0), count(2 * n + 2, 0), current(n, 0);
  std::vector<double> excess(n, 0.0);
  std::vector<bool> queued(n, false);
  std::deque<int> active;
  height[source] = n;
  count[0] = n - 1;
  count[n] = 1;

  auto push = [&](int u, Arc& arc, double amount) {
    arc.residual -= amount;
    adj_[arc.to][arc.rev].residual += amount;
    excess[u] -= amount;
    excess[arc.to] += amount;
    if (!queued[arc.to] && arc.to != source && arc.to != sink) {
      queued[arc.to] = true;
      active.push_back(arc.to);
    }
  };

  for (Arc& arc : adj_[source]) {
    if (arc.residual > 0.0) push(source, arc, arc.residual);
  }

  while (!active.empty()) {
    const int u = active.front();
    active.pop_front();
    queued[u] = false;
    while (excess[u] > tol_) {
      if (current[u] == static_cast<int>(adj_[u].size())) {
        const int old = height[u];
        int lowest = 2 * n;
        for (const Arc& arc : adj_[u]) {
          if (arc.residual > tol_) lowest = std::min(lowest, height[arc.to]);
        }
        --count[old];
        height[u] = std::min(lowest + 1, 2 * n);
        ++count[height[u]];
        current[u] = 0;
        if (count[old] == 0 && old < n) {
          // Gap: nothing above `old` can reach the sink any more.
          for (int w = 0; w < n; ++w) {
            if (height[w] > old && height[w] < n && w != source) {
              --count[height[w]];
              height[w] = n + 1;
              ++count[height[w]];
              current[w] = 0;
            }
          }
        }
        continue;
      }
      Arc& arc = adj_[u][current[u]];
      if (arc.residual > tol_ && height[u] == height[arc.to] + 1) {
        push(u, arc, std::min(excess[u], arc.residual));
      } else {
        ++current[u];
      }
    }
  }
  return excess[sink];
}

std::vector<bool> FlowNetwork::SourceSide(int source) const {
  std::vector<bool> seen(num_nodes(), false);
  std::deque<int> queue{source};
  seen[source] = true;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const Arc& arc : adj_[u]) {
      if (arc.residual > tol_ && !seen[arc.to]) {
        seen[arc.to] = true;
        queue.push_back(arc.to);
      }
    }
  }
  return seen;
}

double FlowNetwork::CutCapacity(const std::vector<bool>& side) const {
  double cut = 0.0;
  for (int u = 0; u < num_nodes(); ++u) {
    if (!side[u]) continue;
    for (const Arc& arc : adj_[u]) {
      if (!side[arc.to]) cut += arc.capacity;
    }
  }
  return cut;
}

SolveResult GreedyLocalSearch(const TaskGraph& g) {
  const auto start = std::chrono::steady_clock::now();
  const OffloadObjective obj(g);
  const std::span<const NodeId> ground = obj.ground_set();
  const int k = obj.ground_size();
  std::vector<Side> sides = obj.base_sides();
  std::vector<double> delta(k);

  // Each thread needs its own scratch copy since FlipDelta toggles sides.
#pragma omp parallel
  {
    std::vector<Side> local = sides;
#pragma omp for schedule(static)
    for (int i = 0; i < k; ++i) delta[i] = FlipDelta(obj, ground[i], local);
  }

  SolveResult result;
  result.algorithm = "greedy";
  int64_t flips = 0;
  while (k > 0) {
    const auto it = std::min_element(delta.begin(), delta.end());
    if (*it >= -kImprovementTol) break;
    const NodeId v = ground[it - delta.begin()];
    sides[v] = sides[v] == Side::kEdge ? Side::kCloud : Side::kEdge;
    ++flips;
    delta[obj.ground_index(v)] = FlipDelta(obj, v, sides);
    auto refresh = [&](NodeId u) {
      const int pos = obj.ground_index(u);
      if (pos >= 0) delta[pos] = FlipDelta(obj, u, sides);
    };
    for (int e : g.out_edges(v)) refresh(g.edge(e).dst);
    for (int e : g.in_edges(v)) refresh(g.edge(e).src);
  }

  std::vector<NodeId> cloud;
  for (NodeId v : ground) {
    if (sides[v] == Side::kCloud) cloud.push_back(v);
  }
  result.stats.major_iterations = flips;
  result.stats.wall_time_ms = ElapsedMs(start);
  FillSolution(obj, cloud, result);
  result.assumption = CheckAssumption(g);
  result.optimal_certified = false;
  return result;
}

bool MincutApplicable(const TaskGraph& g) {
  for (const Edge& e : g.edges()) {
    const EdgeCost& l = e.cost;
    if (std::abs(l.ee - l.cc) > kHomogeneityTol) return false;
    if (std::abs(l.ec - l.ce) > kHomogeneityTol) return false;
    if (l.ee > l.ec + kHomogeneityTol) return false;
  }
  return true;
}

SolveResult SolveMincut(const TaskGraph& g, MinCutDetail* detail) {
  if (!MincutApplicable(g)) {
    throw Error(ErrorCode::kNotApplicable,
                "communication costs are not homogeneous "
                "(need l_ee = l_cc <= l_ec = l_ce on every arc)");
  }
  const auto start = std::chrono::steady_clock::now();
  const OffloadObjective obj(g);
  const int n = g.num_nodes();
  const int source = n;  // cloud side
  const int sink = n + 1;
  const double forcing = g.TotalFiniteCost() + 1.0;

  FlowNetwork net(n + 2);
  for (NodeId v = 0; v < n; ++v) {
    const NodeCost& c = g.node(v);
    const double edge_cost = c.w_edge + c.transfer;
    switch (g.pin(v)) {
      case Pin::kFree:
        net.AddArc(source, v, edge_cost);
        net.AddArc(v, sink, c.w_cloud);
        break;
      case Pin::kEdge:
        net.AddArc(source, v, edge_cost);
        net.AddArc(v, sink, forcing);
        break;
      case Pin::kCloud:
        net.AddArc(source, v, forcing);
        net.AddArc(v, sink, c.w_cloud);
        break;
    }
  }
  double offset = 0.0;
  for (const Edge& e : g.edges()) {
    const double same = 0.5 * (e.cost.ee + e.cost.cc);
    const double cross = 0.5 * (e.cost.ec + e.cost.ce);
    offset += same;
    const double surcharge = std::max(0.0, cross - same);
    if (surcharge > 0.0) {
      net.AddArc(e.src, e.dst, surcharge);
      net.AddArc(e.dst, e.src, surcharge);
    }
  }

  const double flow = net.MaxFlow(source, sink);
  const std::vector<bool> side = net.SourceSide(source);
  const double cut = net.CutCapacity(side);
  if (std::abs(flow - cut) > 1e-9 * std::max(1.0, std::abs(flow))) {
    throw std::logic_error("max-flow " + std::to_string(flow) +
                           " differs from residual cut " + std::to_string(cut));
  }

  std::vector<NodeId> cloud;
  for (NodeId v : obj.ground_set()) {
    if (side[v]) cloud.push_back(v);
  }
  SolveResult result;
  result.algorithm = "mincut";
  result.stats.wall_time_ms = ElapsedMs(start);
  FillSolution(obj, cloud, result);
  result.assumption = CheckAssumption(g);
  result.optimal_certified = true;
  if (detail != nullptr) *detail = {flow, cut, offset};
  return result;
}

}  // namespace offload
