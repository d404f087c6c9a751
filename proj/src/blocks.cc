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

#include <stdexcept>
#include <string>

namespace linematch {

BlockPartition::BlockPartition(const Instance& instance)
    : instance_(&instance),
      s_block_(instance.y()),
      t_block_(instance.z()),
      s_prefix_(instance.y() + 1, 0),
      t_prefix_(instance.z() + 1, 0) {
  for (int i = 0; i < instance.y(); ++i) {
    s_prefix_[i + 1] = s_prefix_[i] + instance.s_coords[i];
  }
  for (int j = 0; j < instance.z(); ++j) {
    t_prefix_[j + 1] = t_prefix_[j] + instance.t_coords[j];
  }
  merged_.reserve(instance.n());
  int i = 0;
  int j = 0;
  while (i < instance.y() || j < instance.z()) {
    const bool take_s =
        j == instance.z() ||
        (i < instance.y() && instance.s_coords[i] <= instance.t_coords[j]);
    const PointRef point = take_s ? PointRef{Side::kS, i++} : PointRef{Side::kT, j++};
    merged_.push_back(point);
    if (blocks_.empty() || blocks_.back().side != point.side) {
      blocks_.push_back(Block{point.side, point.index, 0});
    }
    ++blocks_.back().size;
    (point.side == Side::kS ? s_block_ : t_block_)[point.index] =
        static_cast<int>(blocks_.size()) - 1;
  }
}

Coord BlockPartition::coord(int w, int i) const {
  const Block& b = blocks_[w];
  return instance_->coord(b.side, b.first + i);
}

Demand BlockPartition::demand(int w, int i) const {
  const Block& b = blocks_[w];
  return instance_->demand(b.side, b.first + i);
}

Cost BlockPartition::CoordSum(int w, int i, int j) const {
  if (i > j) return 0;
  const Block& b = blocks_[w];
  const std::vector<Cost>& prefix = b.side == Side::kS ? s_prefix_ : t_prefix_;
  return prefix[b.first + j + 1] - prefix[b.first + i];
}

BlockPartition PartitionBlocks(const Instance& instance) {
  return BlockPartition(instance);
}

GapView::GapView(const BlockPartition& partition, int w)
    : partition_(&partition), w_(w) {
  if (w < 0 || w + 1 >= partition.num_blocks()) {
    throw std::out_of_range("no block pair starting at index " +
                            std::to_string(w));
  }
  s_ = partition.block(w).size;
  t_ = partition.block(w + 1).size;
  b1_ = partition.coord(w + 1, 0);
}

Cost GapView::e(int i) const { return b1_ - partition_->coord(w_, i - 1); }

Cost GapView::f(int i) const { return partition_->coord(w_ + 1, i - 1) - b1_; }

Cost GapView::SumE(int lo, int hi) const {
  if (lo > hi) return 0;
  return b1_ * (hi - lo + 1) - partition_->CoordSum(w_, lo - 1, hi - 1);
}

Cost GapView::SumF(int lo, int hi) const {
  if (lo > hi) return 0;
  return partition_->CoordSum(w_ + 1, lo - 1, hi - 1) - b1_ * (hi - lo + 1);
}

GapView Gaps(const BlockPartition& partition, int w) {
  return GapView(partition, w);
}

}  // namespace linematch
