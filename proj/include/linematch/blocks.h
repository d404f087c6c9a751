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

// Maximal alternating block decomposition A_0..A_m of the merged point
// sequence and the gap quantities e_i, f_i of adjacent block pairs.

#ifndef LINEMATCH_BLOCKS_H_
#define LINEMATCH_BLOCKS_H_

#include <vector>

#include "linematch/core.h"

namespace linematch {

// A maximal run of consecutive points of one set. Members are the sorted
// indices first, first + 1, ..., first + size - 1 of that set.
struct Block {
  Side side = Side::kS;
  int first = 0;
  int size = 0;
};

// A point in merged order.
struct PointRef {
  Side side = Side::kS;
  int index = 0;
  friend bool operator==(const PointRef&, const PointRef&) = default;
};

class BlockPartition {
 public:
  // The partition refers to `instance`, which must outlive it.
  explicit BlockPartition(const Instance& instance);
  explicit BlockPartition(Instance&&) = delete;

  const Instance& instance() const { return *instance_; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  const Block& block(int w) const { return blocks_[w]; }
  const std::vector<Block>& blocks() const { return blocks_; }

  // Coordinate and demand of the i-th member (0-based) of block w.
  Coord coord(int w, int i) const;
  Demand demand(int w, int i) const;
  // Sum of member coordinates i..j (inclusive, 0-based) of block w; O(1).
  Cost CoordSum(int w, int i, int j) const;

  int block_of(Side side, int index) const {
    return side == Side::kS ? s_block_[index] : t_block_[index];
  }
  int position_in_block(Side side, int index) const {
    return index - blocks_[block_of(side, index)].first;
  }
  // Merged order under the (coordinate, S before T, load order) tie-break.
  const std::vector<PointRef>& merged() const { return merged_; }

 private:
  const Instance* instance_;
  std::vector<Block> blocks_;
  std::vector<int> s_block_;
  std::vector<int> t_block_;
  std::vector<PointRef> merged_;
  // Prefix sums of sorted coordinates per set: prefix[k] = sum of first k.
  std::vector<Cost> s_prefix_;
  std::vector<Cost> t_prefix_;
};

BlockPartition PartitionBlocks(const Instance& instance);
BlockPartition PartitionBlocks(Instance&&) = delete;

// Gap view of the adjacent pair (A_w, A_{w+1}) with a_1..a_s in A_w and
// b_1..b_t in A_{w+1}. Indices below are 1-based to match the usual
// notation: e(i) = |b_1 - a_i|, f(i) = |b_i - b_1|.
class GapView {
 public:
  GapView(const BlockPartition& partition, int w);

  int w() const { return w_; }
  int s() const { return s_; }
  int t() const { return t_; }
  Cost e(int i) const;
  Cost f(int i) const;
  // Sum of e(p) for p = lo..hi and of f(p) for p = lo..hi; zero when lo > hi.
  Cost SumE(int lo, int hi) const;
  Cost SumF(int lo, int hi) const;

 private:
  const BlockPartition* partition_;
  int w_;
  int s_;
  int t_;
  Cost b1_;
};

// Throws std::out_of_range unless 0 <= w < num_blocks() - 1.
GapView Gaps(const BlockPartition& partition, int w);

}  // namespace linematch

#endif  // LINEMATCH_BLOCKS_H_
