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

#include "linematch/blocks.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

namespace linematch {
namespace {

std::vector<std::vector<Coord>> BlockCoords(const BlockPartition& partition) {
  std::vector<std::vector<Coord>> result;
  for (int w = 0; w < partition.num_blocks(); ++w) {
    std::vector<Coord> coords;
    for (int i = 0; i < partition.block(w).size; ++i) {
      coords.push_back(partition.coord(w, i));
    }
    result.push_back(coords);
  }
  return result;
}

Instance Unit(const std::vector<Coord>& s, const std::vector<Coord>& t) {
  return MakeInstance(s, std::vector<Demand>(s.size(), 1), t,
                      std::vector<Demand>(t.size(), 1));
}

TEST(PartitionBlocksTest, AlternatingRuns) {
  const Instance instance = Unit({1, 2, 5}, {3, 4, 9});
  const BlockPartition partition = PartitionBlocks(instance);
  EXPECT_EQ(BlockCoords(partition),
            (std::vector<std::vector<Coord>>{{1, 2}, {3, 4}, {5}, {9}}));
  EXPECT_EQ(partition.block(0).side, Side::kS);
  EXPECT_EQ(partition.block(1).side, Side::kT);
  EXPECT_EQ(partition.block(2).side, Side::kS);
  EXPECT_EQ(partition.block(3).side, Side::kT);
}

TEST(PartitionBlocksTest, TwoSingletons) {
  const Instance instance = Unit({1}, {2});
  const BlockPartition partition = PartitionBlocks(instance);
  EXPECT_EQ(BlockCoords(partition), (std::vector<std::vector<Coord>>{{1}, {2}}));
}

TEST(PartitionBlocksTest, FirstBlockBelongsToSmallestPoint) {
  const Instance instance = Unit({5}, {1, 2});
  const BlockPartition partition = PartitionBlocks(instance);
  EXPECT_EQ(BlockCoords(partition), (std::vector<std::vector<Coord>>{{1, 2}, {5}}));
  EXPECT_EQ(partition.block(0).side, Side::kT);
}

TEST(PartitionBlocksTest, TiesPutSBeforeT) {
  const Instance instance = Unit({3, 3}, {3, 1});
  const BlockPartition partition = PartitionBlocks(instance);
  ASSERT_EQ(partition.num_blocks(), 3);
  EXPECT_EQ(partition.block(0).side, Side::kT);
  EXPECT_EQ(partition.block(1).side, Side::kS);
  EXPECT_EQ(partition.block(1).size, 2);
  EXPECT_EQ(partition.block(2).side, Side::kT);
}

TEST(PartitionBlocksTest, RandomPartitionsCoverMergedOrder) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int y = 1 + static_cast<int>(rng() % 12);
    const int z = 1 + static_cast<int>(rng() % 12);
    std::vector<Coord> s(y), t(z);
    for (Coord& x : s) x = static_cast<Coord>(rng() % 30);
    for (Coord& x : t) x = static_cast<Coord>(rng() % 30);
    const Instance instance = Unit(s, t);
    const BlockPartition partition(instance);
    std::vector<Coord> concatenated;
    int total = 0;
    for (int w = 0; w < partition.num_blocks(); ++w) {
      const Block& block = partition.block(w);
      ASSERT_GT(block.size, 0);
      if (w > 0) {
        ASSERT_NE(block.side, partition.block(w - 1).side);
        ASSERT_LE(partition.coord(w - 1, partition.block(w - 1).size - 1),
                  partition.coord(w, 0));
      }
      for (int i = 0; i < block.size; ++i) {
        concatenated.push_back(partition.coord(w, i));
        ASSERT_EQ(partition.block_of(block.side, block.first + i), w);
        ASSERT_EQ(partition.position_in_block(block.side, block.first + i), i);
      }
      total += block.size;
      if (block.size >= 2) {
        ASSERT_EQ(partition.CoordSum(w, 0, block.size - 1),
                  partition.CoordSum(w, 0, 0) +
                      partition.CoordSum(w, 1, block.size - 1));
      }
    }
    ASSERT_EQ(total, instance.n());
    ASSERT_LE(partition.num_blocks(), instance.n());
    ASSERT_TRUE(std::is_sorted(concatenated.begin(), concatenated.end()));
    ASSERT_EQ(static_cast<int>(partition.merged().size()), instance.n());
  }
}

TEST(GapsTest, TwoByTwo) {
  const Instance instance = Unit({1, 2}, {3, 4});
  const BlockPartition partition(instance);
  const GapView gaps = Gaps(partition, 0);
  EXPECT_EQ(gaps.s(), 2);
  EXPECT_EQ(gaps.t(), 2);
  EXPECT_EQ(gaps.e(1), 2);
  EXPECT_EQ(gaps.e(2), 1);
  EXPECT_EQ(gaps.f(1), 0);
  EXPECT_EQ(gaps.f(2), 1);
  EXPECT_EQ(gaps.SumE(1, 2), 3);
  EXPECT_EQ(gaps.SumF(1, 2), 1);
  EXPECT_EQ(gaps.SumE(2, 1), 0);
}

TEST(GapsTest, OneByThree) {
  const Instance instance = Unit({0}, {1, 2, 3});
  const BlockPartition partition(instance);
  const GapView gaps = Gaps(partition, 0);
  EXPECT_EQ(gaps.e(1), 1);
  EXPECT_EQ(gaps.f(1), 0);
  EXPECT_EQ(gaps.f(2), 1);
  EXPECT_EQ(gaps.f(3), 2);
  EXPECT_EQ(gaps.SumF(1, 3), 3);
}

TEST(GapsTest, OutOfRangeBlockPair) {
  const Instance instance = Unit({0}, {1});
  const BlockPartition partition(instance);
  EXPECT_THROW(Gaps(partition, 1), std::out_of_range);
  EXPECT_THROW(Gaps(partition, -1), std::out_of_range);
}

TEST(GapsTest, RandomMonotonicity) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Coord> s(1 + rng() % 10), t(1 + rng() % 10);
    for (Coord& x : s) x = static_cast<Coord>(rng() % 50);
    for (Coord& x : t) x = static_cast<Coord>(rng() % 50);
    const Instance instance = Unit(s, t);
    const BlockPartition partition(instance);
    for (int w = 0; w + 1 < partition.num_blocks(); ++w) {
      const GapView gaps = Gaps(partition, w);
      ASSERT_EQ(gaps.f(1), 0);
      for (int i = 2; i <= gaps.s(); ++i) ASSERT_LE(gaps.e(i), gaps.e(i - 1));
      for (int i = 2; i <= gaps.t(); ++i) ASSERT_GE(gaps.f(i), gaps.f(i - 1));
      Cost sum = 0;
      for (int i = 1; i <= gaps.s(); ++i) sum += gaps.e(i);
      ASSERT_EQ(gaps.SumE(1, gaps.s()), sum);
    }
  }
}

}  // namespace
}  // namespace linematch
