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

#include "linematch/rounds.h"

#include <algorithm>
#include <stdexcept>

#include "linematch/circulation.h"
#include "linematch/mm_solver.h"

namespace linematch {
namespace {

Cost Distance(Coord u, Coord v) {
  const Cost d = static_cast<Cost>(u) - v;
  return d < 0 ? -d : d;
}

}  // namespace

std::optional<RoundMatch> DemandRoundMatch(const std::vector<Coord>& left,
                                           const std::vector<Demand>& left_demands,
                                           const std::vector<Coord>& right,
                                           const std::vector<Demand>& right_demands,
                                           int k,
                                           const std::vector<Pair>& previous) {
  const int s = static_cast<int>(left.size());
  const int t = static_cast<int>(right.size());
  if (static_cast<int>(left_demands.size()) != s ||
      static_cast<int>(right_demands.size()) != t) {
    throw std::invalid_argument("one demand per point is required");
  }
  std::vector<char> used(static_cast<std::size_t>(s) * t, 0);
  for (const Pair& pair : previous) {
    if (pair.s < 0 || pair.s >= s || pair.t < 0 || pair.t >= t) {
      throw std::out_of_range("previous pair outside the groups");
    }
    used[static_cast<std::size_t>(pair.s) * t + pair.t] = 1;
  }
  std::vector<int> left_free(s, 0);
  std::vector<int> right_free(t, 0);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < t; ++j) {
      if (used[static_cast<std::size_t>(i) * t + j]) continue;
      ++left_free[i];
      ++right_free[j];
    }
  }
  std::vector<int> left_need(s, 0);
  std::vector<int> right_need(t, 0);
  int64_t balance = 0;
  for (int i = 0; i < s; ++i) {
    left_need[i] = left_demands[i] >= k + 1 ? 1 : 0;
    if (left_need[i] > left_free[i]) return std::nullopt;
    balance -= left_need[i];
  }
  for (int j = 0; j < t; ++j) {
    right_need[j] = right_demands[j] >= k + 1 ? 1 : 0;
    if (right_need[j] > right_free[j]) return std::nullopt;
    balance += right_need[j];
  }
  // Left points send one unit per new pair, right points receive it; the
  // hub supplies or absorbs the units beyond the round's needs.
  const int hub = s + t;
  CostScalingFlow<__int128> flow(s + t + 1);
  for (int i = 0; i < s; ++i) {
    flow.SetSupply(i, left_need[i]);
    if (left_free[i] > left_need[i]) {
      flow.AddArc(hub, i, left_free[i] - left_need[i], 0);
    }
  }
  for (int j = 0; j < t; ++j) {
    flow.SetSupply(s + j, -right_need[j]);
    if (right_free[j] > right_need[j]) {
      flow.AddArc(s + j, hub, right_free[j] - right_need[j], 0);
    }
  }
  flow.SetSupply(hub, balance);
  std::vector<Pair> arcs;
  std::vector<int> ids;
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < t; ++j) {
      if (used[static_cast<std::size_t>(i) * t + j]) continue;
      ids.push_back(flow.AddArc(i, s + j, 1, Distance(left[i], right[j])));
      arcs.push_back({i, j});
    }
  }
  if (!flow.Solve()) throw std::logic_error("round network has no flow");
  RoundMatch result;
  for (std::size_t a = 0; a < ids.size(); ++a) {
    if (flow.Flow(ids[a]) == 0) continue;
    result.added.push_back(arcs[a]);
    result.cost += Distance(left[arcs[a].s], right[arcs[a].t]);
  }
  result.steps = flow.steps();
  return result;
}

std::vector<SplitChoice> SeparatingScan(const BlockPartition& partition, int w,
                                        const std::vector<ExtendedCost>& left) {
  BlockPairSweep sweep(Gaps(partition, w), left);
  std::vector<SplitChoice> choices;
  while (!sweep.done()) {
    const BlockPairSweep::Step step = sweep.Next();
    choices.push_back({step.i, step.split, step.c});
  }
  return choices;
}

std::vector<SplitChoice> SeparatingScanExhaustive(
    const BlockPartition& partition, int w, const std::vector<ExtendedCost>& left) {
  const GapView gaps = Gaps(partition, w);
  const int s = gaps.s();
  if (static_cast<int>(left.size()) != s + 1) {
    throw std::invalid_argument("left column must hold C(a_0)..C(a_s)");
  }
  std::vector<SplitChoice> choices;
  for (int i = 1; i <= gaps.t(); ++i) {
    SplitChoice best{i, -1, ExtendedCost::Unreachable()};
    for (int h = 0; h <= s; ++h) {
      const int m = s - h;
      Cost structure = gaps.SumE(h + 1, s) + gaps.SumF(1, i);
      if (m < i) structure += static_cast<Cost>(i - m) * gaps.e(s);
      const ExtendedCost value = left[h] + structure;
      if (value < best.value) {
        best.value = value;
        best.split = h;
      }
    }
    choices.push_back(best);
  }
  return choices;
}

std::vector<ExtendedCost> CaseAColumn(const BlockPartition& partition, int w,
                                      const std::vector<ExtendedCost>& left) {
  std::vector<ExtendedCost> column;
  for (const SplitChoice& choice : SeparatingScan(partition, w, left)) {
    column.push_back(choice.value);
  }
  return column;
}

std::optional<Fan> CrossPartitionSatisfy(const BlockPartition& partition,
                                         PointRef p, Direction direction,
                                         int count,
                                         const std::vector<int>& existing) {
  const Instance& instance = partition.instance();
  const Side other = Other(p.side);
  const int w = partition.block_of(p.side, p.index);
  Fan fan;
  if (count <= 0) return fan;
  const Coord x = instance.coord(p.side, p.index);
  auto take = [&](int index) {
    if (std::binary_search(existing.begin(), existing.end(), index)) return;
    fan.partners.push_back(index);
    fan.cost += Distance(x, instance.coord(other, index));
    fan.farthest_block = partition.block_of(other, index);
  };
  if (direction == Direction::kRight) {
    if (w + 1 < partition.num_blocks()) {
      for (int j = partition.block(w + 1).first;
           j < instance.size(other) && static_cast<int>(fan.partners.size()) < count;
           ++j) {
        take(j);
      }
    }
  } else if (w >= 1) {
    const Block& previous = partition.block(w - 1);
    for (int j = previous.first + previous.size - 1;
         j >= 0 && static_cast<int>(fan.partners.size()) < count; --j) {
      take(j);
    }
  }
  if (static_cast<int>(fan.partners.size()) < count) return std::nullopt;
  std::sort(fan.partners.begin(), fan.partners.end());
  return fan;
}

std::vector<ExtendedCost> TailDemandDp(const std::vector<ExtendedCost>& previous,
                                       const std::vector<ExtendedCost>& unit_cost) {
  const int units = static_cast<int>(unit_cost.size());
  if (static_cast<int>(previous.size()) != units + 1) {
    throw std::invalid_argument("previous needs one more entry than unit_cost");
  }
  std::vector<ExtendedCost> result(units + 1, ExtendedCost::Unreachable());
  for (int k = 1; k <= units; ++k) {
    for (int j = 1; j <= k; ++j) {
      if (!previous[j].finite() || !unit_cost[k - j].finite()) continue;
      const ExtendedCost candidate = previous[j] + unit_cost[k - j].value();
      if (candidate < result[k]) result[k] = candidate;
    }
  }
  return result;
}

}  // namespace linematch
