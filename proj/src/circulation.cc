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

#include "linematch/circulation.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>
#include <utility>
#include <stdexcept>

namespace linematch {
namespace {

constexpr int kScalingFactor = 8;

}  // namespace

template <typename Value>
CostScalingFlow<Value>::CostScalingFlow(int num_nodes)
    : num_nodes_(num_nodes),
      scale_(static_cast<Value>(num_nodes) + 1),
      supply_(num_nodes, 0) {}

template <typename Value>
int CostScalingFlow<Value>::AddArc(int tail, int head, int64_t capacity,
                                   Value cost) {
  if (capacity < 0 || cost < 0) {
    throw std::invalid_argument("arcs need non-negative capacity and cost");
  }
  tails_.push_back(tail);
  heads_.push_back(head);
  capacities_.push_back(capacity);
  costs_.push_back(cost);
  return static_cast<int>(tails_.size()) - 1;
}

template <typename Value>
void CostScalingFlow<Value>::SetSupply(int node, int64_t supply) {
  supply_[node] = supply;
}

template <typename Value>
int64_t CostScalingFlow<Value>::Flow(int arc) const {
  if (arc >= built_arcs_) return 0;
  return capacities_[arc] - residual_[slot_[arc]];
}

template <typename Value>
void CostScalingFlow<Value>::Build() {
  const int arc_count = num_arcs();
  std::vector<int64_t> flow(arc_count, 0);
  for (int k = 0; k < built_arcs_; ++k) flow[k] = Flow(k);
  std::vector<int> degree(num_nodes_ + 1, 0);
  for (int k = 0; k < arc_count; ++k) {
    ++degree[tails_[k]];
    ++degree[heads_[k]];
  }
  first_.assign(num_nodes_ + 1, 0);
  for (int v = 0; v < num_nodes_; ++v) first_[v + 1] = first_[v] + degree[v];
  std::vector<int> fill(first_.begin(), first_.end() - 1);
  const int slots = first_[num_nodes_];
  head_.assign(slots, 0);
  mate_.assign(slots, 0);
  residual_.assign(slots, 0);
  cost_.assign(slots, 0);
  slot_.assign(arc_count, 0);
  for (int k = 0; k < arc_count; ++k) {
    const int forward = fill[tails_[k]]++;
    const int backward = fill[heads_[k]]++;
    head_[forward] = heads_[k];
    head_[backward] = tails_[k];
    mate_[forward] = backward;
    mate_[backward] = forward;
    residual_[forward] = capacities_[k] - flow[k];
    residual_[backward] = flow[k];
    cost_[forward] = costs_[k] * scale_;
    cost_[backward] = -cost_[forward];
    slot_[k] = forward;
  }
  built_arcs_ = arc_count;
  current_.assign(num_nodes_, 0);
  queued_.assign(num_nodes_, 0);
  relabels_.assign(num_nodes_, 0);
}

template <typename Value>
bool CostScalingFlow<Value>::Relabel(int node, Value epsilon) {
  ++steps_;
  bool found = false;
  Value best = 0;
  for (int a = first_[node]; a < first_[node + 1]; ++a) {
    ++steps_;
    if (residual_[a] <= 0) continue;
    const Value candidate = price_[head_[a]] - cost_[a];
    if (!found || candidate > best) {
      best = candidate;
      found = true;
    }
  }
  if (!found) return false;
  price_[node] = best - epsilon;
  return ++relabels_[node] <= (kScalingFactor + 2) * num_nodes_ + 16;
}

template <typename Value>
bool CostScalingFlow<Value>::Refine(Value epsilon) {
  std::fill(relabels_.begin(), relabels_.end(), 0);
  for (int v = 0; v < num_nodes_; ++v) {
    for (int a = first_[v]; a < first_[v + 1]; ++a) {
      ++steps_;
      if (residual_[a] > 0 && cost_[a] + price_[v] - price_[head_[a]] < 0) {
        const int64_t delta = residual_[a];
        residual_[a] = 0;
        residual_[mate_[a]] += delta;
        excess_[v] -= delta;
        excess_[head_[a]] += delta;
      }
    }
  }
  std::deque<int> active;
  for (int v = 0; v < num_nodes_; ++v) {
    current_[v] = first_[v];
    if (excess_[v] > 0) {
      active.push_back(v);
      queued_[v] = 1;
    }
  }
  while (!active.empty()) {
    const int v = active.front();
    active.pop_front();
    queued_[v] = 0;
    while (excess_[v] > 0) {
      int& a = current_[v];
      const int end = first_[v + 1];
      for (; a < end; ++a) {
        ++steps_;
        if (residual_[a] <= 0) continue;
        const int w = head_[a];
        if (cost_[a] + price_[v] - price_[w] >= 0) continue;
        const int64_t delta = std::min(excess_[v], residual_[a]);
        residual_[a] -= delta;
        residual_[mate_[a]] += delta;
        excess_[v] -= delta;
        excess_[w] += delta;
        if (excess_[w] > 0 && !queued_[w]) {
          active.push_back(w);
          queued_[w] = 1;
        }
        if (excess_[v] == 0) break;
      }
      if (excess_[v] == 0) break;
      if (!Relabel(v, epsilon)) return false;
      a = first_[v];
    }
  }
  return true;
}

template <typename Value>
bool CostScalingFlow<Value>::ScaleDown(Value epsilon) {
  while (epsilon > 1) {
    epsilon = std::max<Value>(epsilon / kScalingFactor, 1);
    if (!Refine(epsilon)) return false;
  }
  solved_ = true;
  return true;
}

template <typename Value>
bool CostScalingFlow<Value>::Solve() {
  Build();
  price_.assign(num_nodes_, 0);
  excess_ = supply_;
  int64_t balance = 0;
  for (int64_t s : supply_) balance += s;
  if (balance != 0) return false;
  Value max_cost = 0;
  for (Value c : costs_) max_cost = std::max(max_cost, c * scale_);
  return ScaleDown(std::max<Value>(max_cost, 1) * kScalingFactor);
}

template <typename Value>
bool CostScalingFlow<Value>::Resolve() {
  if (!solved_) return Solve();
  const int first_new = built_arcs_;
  const std::vector<Value> price = price_;
  Build();
  price_ = price;
  for (int k = first_new; k < num_arcs(); ++k) {
    const int a = slot_[k];
    while (residual_[a] > 0 &&
           cost_[a] + price_[tails_[k]] - price_[heads_[k]] < -1) {
      Cancel(a);
    }
  }
  return true;
}

template <typename Value>
void CostScalingFlow<Value>::Cancel(int arc) {
  const int tail = head_[mate_[arc]];
  const int head = head_[arc];
  // Shortest residual paths from `head` under lengths reduced cost + 1,
  // which are non-negative on every arc except new arcs still awaiting
  // their own cancellation; those are skipped. The search stops once `tail`
  // is settled.
  constexpr Value kUnset = -1;
  std::vector<Value> distance(num_nodes_, kUnset);
  std::vector<int> parent(num_nodes_, -1);
  std::vector<char> settled(num_nodes_, 0);
  using Entry = std::pair<Value, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  distance[head] = 0;
  heap.push({0, head});
  Value horizon = 0;
  bool reached = false;
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    ++steps_;
    if (settled[v] || d != distance[v]) continue;
    settled[v] = 1;
    horizon = d;
    if (v == tail) {
      reached = true;
      break;
    }
    for (int a = first_[v]; a < first_[v + 1]; ++a) {
      ++steps_;
      if (residual_[a] <= 0) continue;
      const int w = head_[a];
      if (settled[w]) continue;
      const Value length = cost_[a] + price_[v] - price_[w] + 1;
      if (length < 0) continue;
      if (distance[w] == kUnset || d + length < distance[w]) {
        distance[w] = d + length;
        parent[w] = a;
        heap.push({distance[w], w});
      }
    }
  }
  if (!reached) {
    // No residual path closes a cycle through `arc`; lifting every node
    // outside the search region by the same amount keeps 1-optimality.
    horizon = std::max(horizon,
                       -(cost_[arc] + price_[tail] - price_[head]) - 1);
  }
  for (int v = 0; v < num_nodes_; ++v) {
    price_[v] += settled[v] ? distance[v] : horizon;
  }
  if (!reached) return;
  if (cost_[arc] + price_[tail] - price_[head] >= -1) return;
  int64_t delta = residual_[arc];
  for (int v = tail; v != head; v = head_[mate_[parent[v]]]) {
    delta = std::min(delta, residual_[parent[v]]);
  }
  for (int v = tail; v != head; v = head_[mate_[parent[v]]]) {
    residual_[parent[v]] -= delta;
    residual_[mate_[parent[v]]] += delta;
  }
  residual_[arc] -= delta;
  residual_[mate_[arc]] += delta;
}

template class CostScalingFlow<int64_t>;
template class CostScalingFlow<__int128>;

}  // namespace linematch
