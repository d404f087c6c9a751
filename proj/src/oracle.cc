// Copyright 2026 The linematch Authors
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

#include "linematch/oracle.h"

#include <algorithm>
#include <limits>
#include <queue>
#include <utility>

namespace linematch {
namespace {

constexpr Cost kUnbounded = static_cast<Cost>(1) << 120;

// Branch and bound over a fixed list of candidate pairs. Pairs outside the
// list are excluded; `base` pairs are already chosen.
class SubsetSearch {
 public:
  SubsetSearch(const Instance& instance, const std::vector<Pair>& pairs,
               const std::vector<Cost>& costs)
      : instance_(instance), pairs_(pairs), costs_(costs) {}

  // Minimum total cost of `base` plus a subset of `candidates` (indices into
  // pairs) that satisfies every demand. Returns kUnbounded when no such set
  // costs at most `ceiling`.
  Cost Minimize(const std::vector<int>& base, std::vector<int> candidates,
                Cost ceiling) {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](int a, int b) { return costs_[a] < costs_[b]; });
    order_ = std::move(candidates);
    deficit_s_.assign(instance_.y(), 0);
    deficit_t_.assign(instance_.z(), 0);
    for (int i = 0; i < instance_.y(); ++i) deficit_s_[i] = instance_.s_demands[i];
    for (int j = 0; j < instance_.z(); ++j) deficit_t_[j] = instance_.t_demands[j];
    Cost cost = 0;
    for (int k : base) {
      --deficit_s_[pairs_[k].s];
      --deficit_t_[pairs_[k].t];
      cost += costs_[k];
    }
    arcs_s_.assign(instance_.y(), {});
    arcs_t_.assign(instance_.z(), {});
    for (int pos = 0; pos < static_cast<int>(order_.size()); ++pos) {
      arcs_s_[pairs_[order_[pos]].s].push_back(pos);
      arcs_t_[pairs_[order_[pos]].t].push_back(pos);
    }
    best_ = ceiling == kUnbounded ? kUnbounded : ceiling + 1;
    Descend(0, cost);
    return best_ > ceiling ? kUnbounded : best_;
  }

  int64_t steps() const { return steps_; }

 private:
  // Lower bound on the cost still to be added from positions >= pos, or
  // kUnbounded when some deficit cannot be met.
  Cost Bound(int pos) const {
    Cost side_bound[2] = {0, 0};
    for (int side = 0; side < 2; ++side) {
      const auto& deficit = side == 0 ? deficit_s_ : deficit_t_;
      const auto& arcs = side == 0 ? arcs_s_ : arcs_t_;
      for (size_t p = 0; p < deficit.size(); ++p) {
        if (deficit[p] <= 0) continue;
        const auto& list = arcs[p];
        auto it = std::lower_bound(list.begin(), list.end(), pos);
        if (list.end() - it < deficit[p]) return kUnbounded;
        for (int64_t r = 0; r < deficit[p]; ++r, ++it) {
          side_bound[side] += costs_[order_[*it]];
        }
      }
    }
    return std::max(side_bound[0], side_bound[1]);
  }

  void Descend(int pos, Cost cost) {
    ++steps_;
    const Cost bound = Bound(pos);
    if (bound == kUnbounded || cost + bound >= best_) return;
    if (bound == 0 && Satisfied()) {
      best_ = cost;
      return;
    }
    if (pos == static_cast<int>(order_.size())) return;
    const Pair pair = pairs_[order_[pos]];
    --deficit_s_[pair.s];
    --deficit_t_[pair.t];
    Descend(pos + 1, cost + costs_[order_[pos]]);
    ++deficit_s_[pair.s];
    ++deficit_t_[pair.t];
    Descend(pos + 1, cost);
  }

  bool Satisfied() const {
    for (int64_t d : deficit_s_) {
      if (d > 0) return false;
    }
    for (int64_t d : deficit_t_) {
      if (d > 0) return false;
    }
    return true;
  }

  const Instance& instance_;
  const std::vector<Pair>& pairs_;
  const std::vector<Cost>& costs_;
  std::vector<int> order_;
  std::vector<int64_t> deficit_s_;
  std::vector<int64_t> deficit_t_;
  std::vector<std::vector<int>> arcs_s_;
  std::vector<std::vector<int>> arcs_t_;
  Cost best_ = kUnbounded;
  int64_t steps_ = 0;
};

// Residual graph for successive shortest paths.
struct ResidualEdge {
  int head;
  int64_t capacity;
  Cost cost;
  int reverse;
};

class ResidualGraph {
 public:
  explicit ResidualGraph(int num_nodes) : adjacency_(num_nodes) {}

  // Returns (node, position) of the forward edge.
  std::pair<int, int> AddEdge(int tail, int head, int64_t capacity, Cost cost) {
    const int forward = static_cast<int>(adjacency_[tail].size());
    const int backward = static_cast<int>(adjacency_[head].size());
    adjacency_[tail].push_back({head, capacity, cost, backward});
    adjacency_[head].push_back({tail, 0, -cost, forward});
    return {tail, forward};
  }

  int num_nodes() const { return static_cast<int>(adjacency_.size()); }
  std::vector<ResidualEdge>& edges(int node) { return adjacency_[node]; }
  const ResidualEdge& edge(std::pair<int, int> id) const {
    return adjacency_[id.first][id.second];
  }

 private:
  std::vector<std::vector<ResidualEdge>> adjacency_;
};

}  // namespace

OracleResult OracleEnum(const Instance& instance, int limit) {
  OracleResult result;
  const int64_t pair_count = static_cast<int64_t>(instance.y()) * instance.z();
  if (pair_count > limit) {
    result.status = OracleStatus::kTooLarge;
    result.message = "pair count " + std::to_string(pair_count) +
                     " exceeds enumeration limit " + std::to_string(limit);
    return result;
  }
  const Feasibility feasibility = CheckFeasible(instance);
  if (!feasibility.ok) {
    result.status = OracleStatus::kInfeasible;
    result.message = feasibility.reason;
    return result;
  }
  std::vector<Pair> pairs;
  std::vector<Cost> costs;
  for (int i = 0; i < instance.y(); ++i) {
    for (int j = 0; j < instance.z(); ++j) {
      pairs.push_back({i, j});
      costs.push_back(PairCost(instance, i, j));
    }
  }
  const int count = static_cast<int>(pairs.size());
  SubsetSearch search(instance, pairs, costs);
  std::vector<int> all(count);
  for (int k = 0; k < count; ++k) all[k] = k;
  const Cost optimum = search.Minimize({}, all, kUnbounded);
  result.steps += search.steps();

  // Lexicographically least sorted pair list among co-optimal subsets: extend
  // the prefix by the smallest pair that still admits an optimal completion
  // from strictly later pairs, stopping as soon as the prefix itself is
  // optimal.
  std::vector<int> prefix;
  Cost prefix_cost = 0;
  int next = 0;
  while (true) {
    SubsetSearch exact(instance, pairs, costs);
    const Cost stop = exact.Minimize(prefix, {}, optimum);
    result.steps += exact.steps();
    if (stop != kUnbounded) break;
    bool extended = false;
    for (int e = next; e < count && !extended; ++e) {
      if (prefix_cost + costs[e] > optimum) continue;
      std::vector<int> trial = prefix;
      trial.push_back(e);
      std::vector<int> later;
      for (int k = e + 1; k < count; ++k) later.push_back(k);
      SubsetSearch probe(instance, pairs, costs);
      const Cost completion = probe.Minimize(trial, later, optimum);
      result.steps += probe.steps();
      if (completion != kUnbounded) {
        prefix = std::move(trial);
        prefix_cost += costs[e];
        next = e + 1;
        extended = true;
      }
    }
    if (!extended) break;  // unreachable for a feasible instance
  }
  result.cost = optimum;
  for (int k : prefix) result.witness.pairs.push_back(pairs[k]);
  return result;
}

FlowNetwork BuildFlowNetwork(const Instance& instance) {
  const int y = instance.y();
  const int z = instance.z();
  FlowNetwork network;
  network.num_nodes = y + z + 2;
  network.source = y + z;
  network.sink = y + z + 1;
  for (int i = 0; i < y; ++i) {
    network.arcs.push_back({network.source, i, instance.s_demands[i], z, 0, 0});
  }
  network.pair_arc_base = static_cast<int>(network.arcs.size());
  for (int i = 0; i < y; ++i) {
    for (int j = 0; j < z; ++j) {
      network.arcs.push_back({i, y + j, 0, 1, PairCost(instance, i, j), 0});
    }
  }
  for (int j = 0; j < z; ++j) {
    network.arcs.push_back({y + j, network.sink, instance.t_demands[j], y, 0, 0});
  }
  network.arcs.push_back(
      {network.sink, network.source, 0, static_cast<int64_t>(y) * z, 0, 0});
  return network;
}

void ApplyMatchingFlow(const Instance& instance, const Matching& matching,
                       FlowNetwork* network) {
  const int y = instance.y();
  const int z = instance.z();
  for (FlowArc& arc : network->arcs) arc.flow = 0;
  for (const Pair& pair : matching.pairs) {
    network->arcs[network->pair_arc_base + pair.s * z + pair.t].flow += 1;
    network->arcs[pair.s].flow += 1;
    network->arcs[network->pair_arc_base + y * z + pair.t].flow += 1;
    network->arcs.back().flow += 1;
  }
}

OracleResult OracleMcf(const Instance& instance) {
  OracleResult result;
  FlowNetwork network = BuildFlowNetwork(instance);
  const int base_nodes = network.num_nodes;
  const int super_source = base_nodes;
  const int super_sink = base_nodes + 1;
  ResidualGraph graph(base_nodes + 2);
  std::vector<int64_t> excess(base_nodes, 0);
  std::vector<std::pair<int, int>> arc_ids;
  arc_ids.reserve(network.arcs.size());
  for (const FlowArc& arc : network.arcs) {
    arc_ids.push_back(
        graph.AddEdge(arc.tail, arc.head, arc.upper - arc.lower, arc.cost));
    excess[arc.head] += arc.lower;
    excess[arc.tail] -= arc.lower;
  }
  int64_t required = 0;
  for (int v = 0; v < base_nodes; ++v) {
    if (excess[v] > 0) {
      graph.AddEdge(super_source, v, excess[v], 0);
      required += excess[v];
    } else if (excess[v] < 0) {
      graph.AddEdge(v, super_sink, -excess[v], 0);
    }
  }

  const int num_nodes = graph.num_nodes();
  // Label-correcting pass: distances from a virtual root joined to every node
  // by a zero-cost arc.
  std::vector<Cost> potential(num_nodes, 0);
  for (int round = 0; round < num_nodes; ++round) {
    bool changed = false;
    for (int u = 0; u < num_nodes; ++u) {
      for (const ResidualEdge& e : graph.edges(u)) {
        ++result.steps;
        if (e.capacity > 0 && potential[u] + e.cost < potential[e.head]) {
          potential[e.head] = potential[u] + e.cost;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }

  int64_t flow = 0;
  std::vector<Cost> dist(num_nodes);
  std::vector<std::pair<int, int>> parent(num_nodes);
  while (flow < required) {
    std::fill(dist.begin(), dist.end(), kUnbounded);
    dist[super_source] = 0;
    using Entry = std::pair<Cost, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
    heap.push({0, super_source});
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d != dist[u]) continue;
      auto& edges = graph.edges(u);
      for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
        const ResidualEdge& e = edges[k];
        ++result.steps;
        if (e.capacity <= 0) continue;
        const Cost reduced = e.cost + potential[u] - potential[e.head];
        if (d + reduced < dist[e.head]) {
          dist[e.head] = d + reduced;
          parent[e.head] = {u, k};
          heap.push({dist[e.head], e.head});
        }
      }
    }
    if (dist[super_sink] == kUnbounded) {
      result.status = OracleStatus::kInfeasible;
      result.message = "lower bounds cannot be met";
      return result;
    }
    Cost farthest = 0;
    for (Cost d : dist) {
      if (d != kUnbounded) farthest = std::max(farthest, d);
    }
    for (int v = 0; v < num_nodes; ++v) {
      potential[v] += (dist[v] == kUnbounded ? farthest : dist[v]);
    }
    int64_t push = required - flow;
    for (int v = super_sink; v != super_source; v = parent[v].first) {
      push = std::min(push, graph.edges(parent[v].first)[parent[v].second].capacity);
    }
    for (int v = super_sink; v != super_source; v = parent[v].first) {
      ResidualEdge& e = graph.edges(parent[v].first)[parent[v].second];
      e.capacity -= push;
      graph.edges(e.head)[e.reverse].capacity += push;
    }
    flow += push;
  }

  const int y = instance.y();
  const int z = instance.z();
  for (int i = 0; i < y; ++i) {
    for (int j = 0; j < z; ++j) {
      const int arc = network.pair_arc_base + i * z + j;
      if (graph.edge(arc_ids[arc]).capacity == 0) {
        result.witness.pairs.push_back({i, j});
      }
    }
  }
  result.cost = CostOf(instance, result.witness);
  result.potentials.assign(potential.begin(), potential.begin() + base_nodes);
  return result;
}

CertificateCheck CertifyOptimal(const OracleResult& result,
                                const Instance& instance) {
  CertificateCheck check;
  FlowNetwork network = BuildFlowNetwork(instance);
  if (static_cast<int>(result.potentials.size()) != network.num_nodes) {
    check.ok = false;
    check.reason = "potentials missing or of wrong size";
    return check;
  }
  const int z = instance.z();
  for (const Pair& pair : result.witness.pairs) {
    if (pair.s < 0 || pair.s >= instance.y() || pair.t < 0 || pair.t >= z) {
      check.ok = false;
      check.reason = "witness pair out of range";
      return check;
    }
  }
  ApplyMatchingFlow(instance, result.witness, &network);
  for (int a = 0; a < static_cast<int>(network.arcs.size()); ++a) {
    const FlowArc& arc = network.arcs[a];
    if (arc.flow < arc.lower || arc.flow > arc.upper) {
      check.ok = false;
      check.arc = a;
      check.reason = "flow " + std::to_string(arc.flow) + " outside bounds [" +
                     std::to_string(arc.lower) + "," +
                     std::to_string(arc.upper) + "]";
      return check;
    }
    const Cost reduced =
        arc.cost + result.potentials[arc.tail] - result.potentials[arc.head];
    if (arc.flow < arc.upper && reduced < 0) {
      check.ok = false;
      check.arc = a;
      check.reason = "unsaturated arc has negative reduced cost " +
                     CostToString(reduced);
      return check;
    }
    if (arc.flow > arc.lower && reduced > 0) {
      check.ok = false;
      check.arc = a;
      check.reason = "arc above its lower bound has positive reduced cost " +
                     CostToString(reduced);
      return check;
    }
  }
  if (CostOf(instance, result.witness) != result.cost) {
    check.ok = false;
    check.reason = "reported cost differs from the witness cost";
  }
  return check;
}

}  // namespace linematch
