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

#include "linematch/ommd_solver.h"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <utility>

#include "linematch/circulation.h"

namespace linematch {
namespace {

// Nearest `count` points of `others` (sorted) around `x`, as an inclusive
// index range; ties in distance go to the left.
std::pair<int, int> NearestWindow(const std::vector<Coord>& others, Coord x,
                                  int count, int64_t* steps) {
  const int size = static_cast<int>(others.size());
  int right = static_cast<int>(
      std::lower_bound(others.begin(), others.end(), x) - others.begin());
  int left = right - 1;
  for (int taken = 0; taken < count; ++taken) {
    ++*steps;
    if (left < 0) {
      ++right;
    } else if (right >= size) {
      --left;
    } else if (static_cast<Cost>(x) - others[left] <=
               static_cast<Cost>(others[right]) - x) {
      --left;
    } else {
      ++right;
    }
  }
  return {left + 1, right - 1};
}

std::vector<Pair> CollectCandidates(const Instance& instance, int factor, int extra,
                                    int64_t* steps) {
  std::vector<Pair> pairs;
  for (int i = 0; i < instance.y(); ++i) {
    const int count = static_cast<int>(
        std::min<Cost>(static_cast<Cost>(factor) * instance.s_demands[i] + extra,
                       instance.z()));
    const auto [lo, hi] =
        NearestWindow(instance.t_coords, instance.s_coords[i], count, steps);
    for (int j = lo; j <= hi; ++j) pairs.push_back({i, j});
  }
  for (int j = 0; j < instance.z(); ++j) {
    const int count = static_cast<int>(
        std::min<Cost>(static_cast<Cost>(factor) * instance.t_demands[j] + extra,
                       instance.y()));
    const auto [lo, hi] =
        NearestWindow(instance.s_coords, instance.t_coords[j], count, steps);
    for (int i = lo; i <= hi; ++i) pairs.push_back({i, j});
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  *steps += static_cast<int64_t>(pairs.size());
  return pairs;
}

// Sparse table answering argmin over inclusive index ranges.
template <typename Value>
class RangeArgMin {
 public:
  explicit RangeArgMin(const std::vector<Value>& values) : values_(values) {
    const int size = static_cast<int>(values.size());
    log_.assign(size + 1, 0);
    for (int k = 2; k <= size; ++k) log_[k] = log_[k / 2] + 1;
    table_.emplace_back(size);
    for (int k = 0; k < size; ++k) table_[0][k] = k;
    for (int level = 1; (1 << level) <= size; ++level) {
      const std::vector<int>& below = table_[level - 1];
      std::vector<int> row(size - (1 << level) + 1);
      for (int k = 0; k < static_cast<int>(row.size()); ++k) {
        row[k] = Better(below[k], below[k + (1 << (level - 1))]);
      }
      table_.push_back(std::move(row));
    }
  }

  int Query(int lo, int hi) const {
    const int level = log_[hi - lo + 1];
    return Better(table_[level][lo], table_[level][hi - (1 << level) + 1]);
  }

 private:
  int Better(int a, int b) const { return values_[b] < values_[a] ? b : a; }

  const std::vector<Value>& values_;
  std::vector<int> log_;
  std::vector<std::vector<int>> table_;
};

template <typename Value>
class OmmdEngine {
 public:
  OmmdEngine(const Instance& instance, const OmmdOptions& options)
      : instance_(instance),
        options_(options),
        y_(instance.y()),
        z_(instance.z()),
        hub_(y_ + z_),
        flow_(y_ + z_ + 1) {
    origin_ = std::min(instance.s_coords.front(), instance.t_coords.front());
  }

  Matching Run(OmmdStats* stats) {
    std::vector<Pair> candidates =
        CollectCandidates(instance_, options_.demand_factor,
                          options_.extra_candidates, &steps_);
    stats->candidate_pairs = static_cast<int64_t>(candidates.size());
    Cost supply_balance = 0;
    for (int i = 0; i < y_; ++i) {
      flow_.SetSupply(i, instance_.s_demands[i]);
      supply_balance -= instance_.s_demands[i];
      if (z_ - instance_.s_demands[i] > 0) {
        flow_.AddArc(hub_, i, z_ - instance_.s_demands[i], 0);
      }
    }
    for (int j = 0; j < z_; ++j) {
      flow_.SetSupply(y_ + j, -instance_.t_demands[j]);
      supply_balance += instance_.t_demands[j];
      if (y_ - instance_.t_demands[j] > 0) {
        flow_.AddArc(y_ + j, hub_, y_ - instance_.t_demands[j], 0);
      }
    }
    flow_.SetSupply(hub_, static_cast<int64_t>(supply_balance));
    AddPairs(candidates);
    if (!flow_.Solve()) {
      throw std::logic_error("candidate network has no feasible flow");
    }
    while (true) {
      std::vector<Pair> violated = Certify();
      if (violated.empty()) break;
      ++stats->certificate_rounds;
      stats->added_pairs += static_cast<int64_t>(violated.size());
      AddPairs(violated);
      if (!flow_.Resolve()) {
        throw std::logic_error("re-optimization lost feasibility");
      }
    }
    Matching matching;
    for (std::size_t k = 0; k < pair_arcs_.size(); ++k) {
      if (flow_.Flow(pair_arcs_[k]) > 0) matching.pairs.push_back(pairs_[k]);
    }
    matching.Canonicalize();
    return matching;
  }

  int64_t steps() const { return steps_ + flow_.steps(); }

 private:
  Value Shifted(Coord x) const {
    return static_cast<Value>(static_cast<Cost>(x) - origin_);
  }

  void AddPairs(const std::vector<Pair>& pairs) {
    for (const Pair& pair : pairs) {
      const Value cost = static_cast<Value>(PairCost(instance_, pair.s, pair.t));
      pair_arcs_.push_back(flow_.AddArc(pair.s, y_ + pair.t, 1, cost));
      pairs_.push_back(pair);
    }
    // Membership index: sorted t list per s over all pair arcs so far.
    member_first_.assign(y_ + 1, 0);
    for (const Pair& pair : pairs_) ++member_first_[pair.s + 1];
    for (int i = 0; i < y_; ++i) member_first_[i + 1] += member_first_[i];
    member_t_.assign(pairs_.size(), 0);
    std::vector<int> fill(member_first_.begin(), member_first_.end() - 1);
    for (const Pair& pair : pairs_) member_t_[fill[pair.s]++] = pair.t;
    for (int i = 0; i < y_; ++i) {
      std::sort(member_t_.begin() + member_first_[i],
                member_t_.begin() + member_first_[i + 1]);
    }
    steps_ += static_cast<int64_t>(pairs_.size());
  }

  bool IsMember(int s, int t) const {
    return std::binary_search(member_t_.begin() + member_first_[s],
                              member_t_.begin() + member_first_[s + 1], t);
  }

  // Pairs outside the network whose scaled reduced cost is below -1.
  std::vector<Pair> Certify() {
    const Value scale = flow_.scale();
    std::vector<Value> rightward(z_);
    std::vector<Value> leftward(z_);
    for (int j = 0; j < z_; ++j) {
      ++steps_;
      const Value x = Shifted(instance_.t_coords[j]) * scale;
      rightward[j] = x - flow_.Price(y_ + j);
      leftward[j] = -x - flow_.Price(y_ + j);
    }
    const RangeArgMin<Value> right_min(rightward);
    const RangeArgMin<Value> left_min(leftward);
    steps_ += 2 * static_cast<int64_t>(z_);
    std::vector<Pair> violated;
    std::vector<std::pair<int, int>> ranges;
    for (int i = 0; i < y_; ++i) {
      const Value x = Shifted(instance_.s_coords[i]) * scale;
      const Value price = flow_.Price(i);
      const int split = static_cast<int>(
          std::lower_bound(instance_.t_coords.begin(), instance_.t_coords.end(),
                           instance_.s_coords[i]) -
          instance_.t_coords.begin());
      int found = 0;
      for (int direction = 0; direction < 2; ++direction) {
        const bool right = direction == 0;
        const RangeArgMin<Value>& table = right ? right_min : left_min;
        const Value offset = right ? price - x : price + x;
        ranges.clear();
        if (right && split < z_) ranges.push_back({split, z_ - 1});
        if (!right && split > 0) ranges.push_back({0, split - 1});
        while (!ranges.empty() && found < options_.max_additions_per_point) {
          const auto [lo, hi] = ranges.back();
          ranges.pop_back();
          ++steps_;
          const int j = table.Query(lo, hi);
          const Value reduced = (right ? rightward[j] : leftward[j]) + offset;
          if (reduced >= -1) continue;
          if (!IsMember(i, j)) {
            violated.push_back({i, j});
            ++found;
          }
          if (lo < j) ranges.push_back({lo, j - 1});
          if (j < hi) ranges.push_back({j + 1, hi});
        }
      }
    }
    return violated;
  }

  const Instance& instance_;
  OmmdOptions options_;
  int y_;
  int z_;
  int hub_;
  Coord origin_ = 0;
  CostScalingFlow<Value> flow_;
  std::vector<Pair> pairs_;
  std::vector<int> pair_arcs_;
  std::vector<int> member_first_;
  std::vector<int> member_t_;
  int64_t steps_ = 0;
};

// Scaled costs, prices and reduced costs stay below span * (N+1) * 32 * N in
// magnitude, where N is the node count.
bool FitsNarrow(const Instance& instance) {
  const Coord lo = std::min(instance.s_coords.front(), instance.t_coords.front());
  const Coord hi = std::max(instance.s_coords.back(), instance.t_coords.back());
  const Cost span = static_cast<Cost>(hi) - lo;
  const Cost nodes = instance.n() + 2;
  const Cost bound = span * nodes * nodes * 32;
  return bound < (static_cast<Cost>(1) << 62);
}

}  // namespace

std::vector<Pair> CandidatePairs(const Instance& instance, int factor,
                                 int extra) {
  int64_t steps = 0;
  return CollectCandidates(instance, factor, extra, &steps);
}

SolveReport OmmdSolve(const Instance& instance, const OmmdOptions& options,
                      OmmdStats* stats) {
  if (instance.y() == 0 || instance.z() == 0) {
    throw InstanceError(InstanceErrorCode::kEmptySide, "a point set is empty");
  }
  if (options.demand_factor < 1 || options.extra_candidates < 0) {
    throw std::invalid_argument("candidate window options out of range");
  }
  const Feasibility feasibility = CheckFeasible(instance);
  if (!feasibility.ok) throw InfeasibleError(feasibility.reason);
  const auto start = std::chrono::steady_clock::now();
  OmmdStats local;
  OmmdStats* out = stats != nullptr ? stats : &local;
  *out = OmmdStats{};
  SolveReport report;
  report.algorithm = "ommd";
  report.n = instance.n();
  if (FitsNarrow(instance)) {
    OmmdEngine<int64_t> engine(instance, options);
    report.witness = engine.Run(out);
    report.steps = engine.steps();
  } else {
    out->wide_arithmetic = true;
    OmmdEngine<__int128> engine(instance, options);
    report.witness = engine.Run(out);
    report.steps = engine.steps();
  }
  report.cost = CostOf(instance, report.witness);
  report.millis = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return report;
}

}  // namespace linematch
