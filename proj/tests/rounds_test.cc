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

#include <gtest/gtest.h>

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "linematch/blocks.h"
#include "linematch/mm_solver.h"

namespace linematch {
namespace {

// Cheapest set of unused pairs giving every point of demand >= k + 1 a new
// partner, by enumeration of all subsets.
std::optional<Cost> BruteRound(const std::vector<Coord>& left,
                               const std::vector<Demand>& left_demands,
                               const std::vector<Coord>& right,
                               const std::vector<Demand>& right_demands, int k,
                               const std::vector<Pair>& previous) {
  std::vector<Pair> free_pairs;
  for (int i = 0; i < static_cast<int>(left.size()); ++i) {
    for (int j = 0; j < static_cast<int>(right.size()); ++j) {
      if (std::find(previous.begin(), previous.end(), Pair{i, j}) ==
          previous.end()) {
        free_pairs.push_back({i, j});
      }
    }
  }
  std::optional<Cost> best;
  const int count = static_cast<int>(free_pairs.size());
  for (uint32_t mask = 0; mask < (1u << count); ++mask) {
    std::vector<char> left_hit(left.size(), 0);
    std::vector<char> right_hit(right.size(), 0);
    Cost cost = 0;
    for (int b = 0; b < count; ++b) {
      if (!(mask >> b & 1)) continue;
      const Pair& pair = free_pairs[b];
      left_hit[pair.s] = 1;
      right_hit[pair.t] = 1;
      cost += std::max(left[pair.s], right[pair.t]) -
              std::min(left[pair.s], right[pair.t]);
    }
    bool covered = true;
    for (std::size_t i = 0; i < left.size(); ++i) {
      if (left_demands[i] >= k + 1 && !left_hit[i]) covered = false;
    }
    for (std::size_t j = 0; j < right.size(); ++j) {
      if (right_demands[j] >= k + 1 && !right_hit[j]) covered = false;
    }
    if (covered && (!best || cost < *best)) best = cost;
  }
  return best;
}

TEST(DemandRoundMatchTest, FirstRoundPairsNearest) {
  const auto round = DemandRoundMatch({0, 10}, {1, 1}, {4, 6}, {2, 1}, 0, {});
  ASSERT_TRUE(round.has_value());
  EXPECT_EQ(round->cost, 8);
}

TEST(DemandRoundMatchTest, SecondRoundAvoidsUsedPairs) {
  const std::vector<Pair> previous = {{0, 0}, {1, 1}};
  const auto round =
      DemandRoundMatch({0, 10}, {1, 1}, {4, 6}, {2, 1}, 1, previous);
  ASSERT_TRUE(round.has_value());
  EXPECT_EQ(round->added, (std::vector<Pair>{{1, 0}}));
  EXPECT_EQ(round->cost, 6);
}

TEST(DemandRoundMatchTest, ExhaustedPartnersFail) {
  EXPECT_FALSE(
      DemandRoundMatch({0}, {2}, {1}, {1}, 1, {{0, 0}}).has_value());
}

TEST(DemandRoundMatchTest, RejectsBadInput) {
  EXPECT_THROW(DemandRoundMatch({0}, {}, {1}, {1}, 0, {}),
               std::invalid_argument);
  EXPECT_THROW(DemandRoundMatch({0}, {1}, {1}, {1}, 0, {{0, 3}}),
               std::out_of_range);
}

TEST(DemandRoundMatchTest, MatchesEnumeration) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 600; ++trial) {
    const int s = 1 + static_cast<int>(rng() % 4);
    const int t = 1 + static_cast<int>(rng() % 4);
    std::vector<Coord> left(s), right(t);
    std::vector<Demand> left_demands(s), right_demands(t);
    for (Coord& x : left) x = static_cast<Coord>(rng() % 50);
    for (Coord& x : right) x = static_cast<Coord>(rng() % 50);
    for (Demand& d : left_demands) d = 1 + static_cast<Demand>(rng() % 3);
    for (Demand& d : right_demands) d = 1 + static_cast<Demand>(rng() % 3);
    std::vector<Pair> previous;
    for (int i = 0; i < s; ++i) {
      for (int j = 0; j < t; ++j) {
        if (rng() % 3 == 0) previous.push_back({i, j});
      }
    }
    const int k = static_cast<int>(rng() % 3);
    const auto expected =
        BruteRound(left, left_demands, right, right_demands, k, previous);
    const auto actual =
        DemandRoundMatch(left, left_demands, right, right_demands, k, previous);
    ASSERT_EQ(expected.has_value(), actual.has_value());
    if (!expected) continue;
    ASSERT_EQ(*expected, actual->cost);
    for (const Pair& pair : actual->added) {
      ASSERT_EQ(std::find(previous.begin(), previous.end(), pair),
                previous.end());
    }
  }
}

Instance RandomUnitInstance(std::mt19937_64* rng, int n) {
  const int y = 1 + static_cast<int>((*rng)() % (n - 1));
  std::vector<Coord> s(y), t(n - y);
  for (Coord& x : s) x = static_cast<Coord>((*rng)() % 101);
  for (Coord& x : t) x = static_cast<Coord>((*rng)() % 101);
  return MakeInstance(s, std::vector<Demand>(y, 1), t,
                      std::vector<Demand>(n - y, 1));
}

std::vector<ExtendedCost> RandomLeftColumn(std::mt19937_64* rng, int s) {
  std::vector<ExtendedCost> left(s + 1);
  for (ExtendedCost& value : left) {
    if ((*rng)() % 5 == 0) {
      value = ExtendedCost::Unreachable();
    } else {
      value = ExtendedCost(static_cast<Cost>((*rng)() % 200));
    }
  }
  return left;
}

TEST(SeparatingScanTest, MatchesExhaustiveScan) {
  std::mt19937_64 rng(29);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Instance instance = RandomUnitInstance(&rng, 4 + trial % 20);
    const BlockPartition partition(instance);
    for (int w = 0; w + 1 < partition.num_blocks(); ++w) {
      const GapView gaps = Gaps(partition, w);
      const std::vector<ExtendedCost> left = RandomLeftColumn(&rng, gaps.s());
      const std::vector<SplitChoice> fast = SeparatingScan(partition, w, left);
      const std::vector<SplitChoice> slow =
          SeparatingScanExhaustive(partition, w, left);
      ASSERT_EQ(fast.size(), slow.size());
      for (std::size_t k = 0; k < fast.size(); ++k) {
        ASSERT_EQ(fast[k].i, slow[k].i);
        ASSERT_EQ(fast[k].value, slow[k].value);
        if (!slow[k].value.finite()) continue;
        const int h = fast[k].split;
        const int m = gaps.s() - h;
        Cost structure = gaps.SumE(h + 1, gaps.s()) + gaps.SumF(1, fast[k].i);
        if (m < fast[k].i) structure += (fast[k].i - m) * gaps.e(gaps.s());
        ASSERT_EQ(left[h] + structure, fast[k].value);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(SeparatingScanTest, SplitCanMoveLeftAsPrefixGrows) {
  // Blocks {4, 5} {7, 10, 13, 19} {27, 28}: b_1 = 27 is best served by a_s
  // = 19 alone, but b_1, b_2 are cheaper with 13 and 19 than with 19 twice.
  const Instance instance =
      MakeInstance({4, 5, 27, 28}, {1, 1, 1, 1}, {7, 10, 13, 19}, {1, 1, 1, 1});
  const BlockPartition partition(instance);
  const MmTable table = MmBuildTable(partition);
  std::vector<ExtendedCost> left = {table.value(Side::kS, 1)};
  for (int j = 0; j < 4; ++j) left.push_back(table.value(Side::kT, j));
  EXPECT_EQ(left[3], ExtendedCost(16));
  const std::vector<SplitChoice> fast = SeparatingScan(partition, 1, left);
  ASSERT_EQ(fast.size(), 2u);
  EXPECT_EQ(fast[0].split, 3);
  EXPECT_EQ(fast[0].value, ExtendedCost(24));
  EXPECT_EQ(fast[1].split, 2);
  EXPECT_EQ(fast[1].value, ExtendedCost(31));
  EXPECT_EQ(table.value(Side::kS, 3), ExtendedCost(31));
}

TEST(SeparatingScanTest, RejectsWrongColumnLength) {
  const Instance instance = MakeInstance({0, 1}, {1, 1}, {2, 3}, {1, 1});
  const BlockPartition partition(instance);
  EXPECT_THROW(SeparatingScanExhaustive(partition, 0, {ExtendedCost(0)}),
               std::invalid_argument);
}

TEST(CaseAColumnTest, FollowsTableOnFirstBlockPair) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance instance = RandomUnitInstance(&rng, 4 + trial % 12);
    const BlockPartition partition(instance);
    if (partition.num_blocks() < 2) continue;
    const MmTable table = MmBuildTable(partition);
    const Block& first = partition.block(0);
    const Block& second = partition.block(1);
    std::vector<ExtendedCost> left(first.size + 1, ExtendedCost::Unreachable());
    left[0] = ExtendedCost(0);
    const std::vector<ExtendedCost> column = CaseAColumn(partition, 0, left);
    ASSERT_EQ(static_cast<int>(column.size()), second.size);
    for (int i = 0; i < second.size; ++i) {
      ASSERT_LE(table.value(second.side, second.first + i), column[i]);
    }
    const int last = second.first + second.size - 1;
    if (partition.num_blocks() == 2) {
      ASSERT_EQ(table.value(second.side, last), column.back());
    }
  }
}

TEST(CrossPartitionSatisfyTest, TakesNearestNonPartners) {
  // Blocks: {s0, s1} {t0, t1, t2} {s2}.
  const Instance instance =
      MakeInstance({0, 2, 20}, {1, 1, 1}, {5, 7, 9}, {1, 1, 1});
  const BlockPartition partition(instance);
  const auto right =
      CrossPartitionSatisfy(partition, {Side::kS, 1}, Direction::kRight, 2, {0});
  ASSERT_TRUE(right.has_value());
  EXPECT_EQ(right->partners, (std::vector<int>{1, 2}));
  EXPECT_EQ(right->cost, 12);
  EXPECT_EQ(right->farthest_block, 1);
  const auto left =
      CrossPartitionSatisfy(partition, {Side::kS, 2}, Direction::kLeft, 2, {});
  ASSERT_TRUE(left.has_value());
  EXPECT_EQ(left->partners, (std::vector<int>{1, 2}));
  EXPECT_EQ(left->cost, 24);
  EXPECT_FALSE(CrossPartitionSatisfy(partition, {Side::kS, 0},
                                     Direction::kLeft, 1, {})
                   .has_value());
  EXPECT_FALSE(CrossPartitionSatisfy(partition, {Side::kS, 2},
                                     Direction::kLeft, 3, {0})
                   .has_value());
}

TEST(CrossPartitionSatisfyTest, MatchesNearestByDistance) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    const Instance instance = RandomUnitInstance(&rng, 4 + trial % 16);
    const BlockPartition partition(instance);
    const std::vector<PointRef>& merged = partition.merged();
    const int position = static_cast<int>(rng() % merged.size());
    const PointRef p = merged[position];
    const Side other = Other(p.side);
    const Direction direction =
        rng() % 2 == 0 ? Direction::kLeft : Direction::kRight;
    std::vector<int> existing;
    for (int j = 0; j < instance.size(other); ++j) {
      if (rng() % 4 == 0) existing.push_back(j);
    }
    std::vector<Cost> distances;
    for (int q = 0; q < static_cast<int>(merged.size()); ++q) {
      if (merged[q].side != other) continue;
      if (direction == Direction::kRight ? q < position : q > position) {
        continue;
      }
      if (std::binary_search(existing.begin(), existing.end(),
                             merged[q].index)) {
        continue;
      }
      distances.push_back(PairCost(instance,
                                   p.side == Side::kS ? p.index : merged[q].index,
                                   p.side == Side::kS ? merged[q].index : p.index));
    }
    std::sort(distances.begin(), distances.end());
    const int count = 1 + static_cast<int>(rng() % 3);
    const auto fan = CrossPartitionSatisfy(partition, p, direction, count, existing);
    if (static_cast<int>(distances.size()) < count) {
      ASSERT_FALSE(fan.has_value());
      continue;
    }
    ASSERT_TRUE(fan.has_value());
    Cost expected = 0;
    for (int k = 0; k < count; ++k) expected += distances[k];
    ASSERT_EQ(fan->cost, expected);
    ASSERT_EQ(static_cast<int>(fan->partners.size()), count);
  }
}

TEST(TailDemandDpTest, MinPlusOverUnits) {
  const std::vector<ExtendedCost> previous = {
      ExtendedCost::Unreachable(), ExtendedCost(5), ExtendedCost(7),
      ExtendedCost(20)};
  const std::vector<ExtendedCost> unit = {ExtendedCost(0), ExtendedCost(1),
                                          ExtendedCost(10)};
  const std::vector<ExtendedCost> result = TailDemandDp(previous, unit);
  ASSERT_EQ(result.size(), 4u);
  EXPECT_FALSE(result[0].finite());
  EXPECT_EQ(result[1], ExtendedCost(5));
  EXPECT_EQ(result[2], ExtendedCost(6));
  EXPECT_EQ(result[3], ExtendedCost(8));
}

TEST(TailDemandDpTest, UnreachableEntriesPropagate) {
  const std::vector<ExtendedCost> previous = {
      ExtendedCost::Unreachable(), ExtendedCost::Unreachable(), ExtendedCost(3)};
  const std::vector<ExtendedCost> unit = {ExtendedCost::Unreachable(),
                                          ExtendedCost(4)};
  const std::vector<ExtendedCost> result = TailDemandDp(previous, unit);
  EXPECT_FALSE(result[1].finite());
  EXPECT_FALSE(result[2].finite());
  EXPECT_THROW(TailDemandDp(previous, {}), std::invalid_argument);
}

}  // namespace
}  // namespace linematch
