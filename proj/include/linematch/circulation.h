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

// Min-cost flow with node supplies by cost scaling (successive
// approximation with push/relabel refinement). Arc costs are multiplied by
// num_nodes + 1 so that 1-optimality in scaled units implies optimality.

#ifndef LINEMATCH_CIRCULATION_H_
#define LINEMATCH_CIRCULATION_H_

#include <cstdint>
#include <vector>

namespace linematch {

template <typename Value>
class CostScalingFlow {
 public:
  explicit CostScalingFlow(int num_nodes);

  // Adds an arc with capacity >= 0 and cost >= 0; returns its id.
  int AddArc(int tail, int head, int64_t capacity, Value cost);
  void SetSupply(int node, int64_t supply);

  // Finds a min-cost flow meeting every supply (positive) and demand
  // (negative). Returns false when no feasible flow exists.
  bool Solve();
  // After Solve(): takes the arcs added since then at zero flow and
  // restores 1-optimality by cancelling, for each new arc with reduced cost
  // below -1, a cheapest residual cycle through it.
  bool Resolve();

  int num_nodes() const { return num_nodes_; }
  int num_arcs() const { return static_cast<int>(tails_.size()); }
  int64_t Flow(int arc) const;
  // Scaled price of a node; ReducedCost(tail, head, cost) below uses the same
  // scale.
  Value Price(int node) const { return price_[node]; }
  Value scale() const { return scale_; }
  // Scaled reduced cost of a would-be arc tail -> head with the given cost.
  Value ReducedCost(int tail, int head, Value cost) const {
    return cost * scale_ + price_[tail] - price_[head];
  }
  int64_t steps() const { return steps_; }

 private:
  void Build();
  bool Refine(Value epsilon);
  // Refines from `epsilon` down to 1 by the scaling factor.
  bool ScaleDown(Value epsilon);
  bool Relabel(int node, Value epsilon);
  // Shortest-path price update from the head of `arc` (a CSR slot) and, if
  // the arc still violates 1-optimality, a unit push around the cycle.
  void Cancel(int arc);

  int num_nodes_;
  Value scale_;
  std::vector<int64_t> supply_;

  // Arc list as added; arc k occupies CSR slot slot_[k].
  std::vector<int> tails_;
  std::vector<int> heads_;
  std::vector<int64_t> capacities_;
  std::vector<Value> costs_;
  std::vector<int> slot_;

  // CSR residual graph: forward and reverse entries interleaved per node.
  std::vector<int> first_;
  std::vector<int> head_;
  std::vector<int> mate_;
  std::vector<int64_t> residual_;
  std::vector<Value> cost_;

  std::vector<Value> price_;
  std::vector<int64_t> excess_;
  std::vector<int> current_;
  std::vector<char> queued_;
  std::vector<int> relabels_;
  bool solved_ = false;
  int built_arcs_ = 0;
  int64_t steps_ = 0;
};

extern template class CostScalingFlow<int64_t>;
extern template class CostScalingFlow<__int128>;

}  // namespace linematch

#endif  // LINEMATCH_CIRCULATION_H_
