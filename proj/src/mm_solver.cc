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

#include "linematch/mm_solver.h"

#include <chrono>
#include <stdexcept>
#include <utility>

namespace linematch {
namespace {

// Points of block w as (side, sorted index); p is 1-based.
int Member(const BlockPartition& partition, int w, int p) {
  return partition.block(w).first + p - 1;
}

void AddPair(const BlockPartition& partition, int left_block, int a, int right_block,
             int b, Matching* matching) {
  const int left_index = Member(partition, left_block, a);
  const int right_index = Member(partition, right_block, b);
  if (partition.block(left_block).side == Side::kS) {
    matching->pairs.push_back({left_index, right_index});
  } else {
    matching->pairs.push_back({right_index, left_index});
  }
}

}  // namespace

BlockPairSweep::BlockPairSweep(const GapView& gaps,
                               std::vector<ExtendedCost> left)
    : gaps_(gaps), left_(std::move(left)) {
  const int s = gaps_.s();
  if (static_cast<int>(left_.size()) != s + 1) {
    throw std::invalid_argument("left column must hold C(a_0)..C(a_s)");
  }
  g_.resize(s + 1);
  prefix_min_.resize(s + 1);
  prefix_arg_.resize(s + 1);
  for (int h = 0; h <= s; ++h) {
    ++steps_;
    g_[h] = left_[h] + gaps_.SumE(h + 1, s);
    if (h == 0 || g_[h] <= prefix_min_[h - 1]) {
      prefix_min_[h] = g_[h];
      prefix_arg_[h] = h;
    } else {
      prefix_min_[h] = prefix_min_[h - 1];
      prefix_arg_[h] = prefix_arg_[h - 1];
    }
  }
  y_prev_ = g_[s];
  y_prev_split_ = g_[s].finite() ? s : -1;
  z_prev_ = ExtendedCost::Unreachable();
  z_prev_split_ = -1;
}

BlockPairSweep::Step BlockPairSweep::Next() {
  if (done()) throw std::out_of_range("block pair sweep already finished");
  ++steps_;
  const int s = gaps_.s();
  const int i = ++i_;
  const Cost f_prefix = gaps_.SumF(1, i);
  Step step;
  step.i = i;

  int x_split = -1;
  if (s - i - 1 >= 0) {
    step.x = prefix_min_[s - i - 1] + f_prefix;
    x_split = prefix_arg_[s - i - 1];
  }
  int y_split = -1;
  if (s - i >= 0) {
    step.y = g_[s - i] + f_prefix;
    y_split = s - i;
  }
  int z_split = -1;
  const Cost z_increment = gaps_.e(s) + gaps_.f(i);
  if (y_prev_ <= z_prev_) {
    step.z = y_prev_ + z_increment;
    z_split = y_prev_split_;
  } else {
    step.z = z_prev_ + z_increment;
    z_split = z_prev_split_;
  }

  // Ties prefer fewer new pairs (Y and Z add i pairs, X adds more), then the
  // smaller split index.
  step.c = step.y;
  step.branch = step.y.finite() ? Branch::kY : Branch::kNone;
  step.split = step.y.finite() ? y_split : -1;
  if (step.z < step.c) {
    step.c = step.z;
    step.branch = Branch::kZ;
    step.split = z_split;
  }
  if (step.x < step.c) {
    step.c = step.x;
    step.branch = Branch::kX;
    step.split = x_split;
  }

  y_prev_ = step.y;
  y_prev_split_ = y_split;
  z_prev_ = step.z;
  z_prev_split_ = step.z.finite() ? z_split : -1;
  last_ = step;
  return step;
}

Cost Case0Cost(const GapView& gaps, int i) {
  if (gaps.w() != 0) {
    throw std::invalid_argument("closed forms apply to the first block pair");
  }
  const int s = gaps.s();
  Cost value = gaps.SumE(1, s) + gaps.SumF(1, i);
  if (i > s) value += static_cast<Cost>(i - s) * gaps.e(s);
  return value;
}

BlockPairSweep::Step Case4XyzStep(BlockPairSweep* sweep, int i) {
  if (i != sweep->next_index()) {
    throw std::invalid_argument("sweep steps must be taken in order");
  }
  return sweep->Next();
}

std::optional<ExtendedCost> DegreeCaseStep(const BlockPairSweep& sweep, int i) {
  const BlockPairSweep::Step& previous = sweep.last();
  if (i < 2 || previous.i != i - 1 || !previous.c.finite()) return std::nullopt;
  const GapView& gaps = sweep.gaps();
  const int m = gaps.s() - previous.split;
  const int count = i - 1;
  int64_t deg_b1 = 1;
  int64_t deg_as = 1;
  if (m >= count) {
    deg_b1 = m - count + 1;
  } else {
    deg_as = count - m + 1;
  }
  if (deg_b1 > 1) return previous.c + (gaps.f(i) - gaps.f(1));
  if (deg_as > 1) return previous.c + (gaps.f(i) + gaps.e(gaps.s()));
  return std::nullopt;
}

void AppendBlockPairEdges(const BlockPartition& partition, int w, int split,
                          int i, Matching* matching) {
  const int s = partition.block(w).size;
  const int m = s - split;
  if (m >= i) {
    for (int p = split + 1; p <= split + m - i; ++p) {
      AddPair(partition, w, p, w + 1, 1, matching);
    }
    for (int j = 1; j <= i; ++j) {
      AddPair(partition, w, split + m - i + j, w + 1, j, matching);
    }
  } else {
    for (int j = 1; j <= m; ++j) {
      AddPair(partition, w, split + j, w + 1, j, matching);
    }
    for (int j = m + 1; j <= i; ++j) {
      AddPair(partition, w, s, w + 1, j, matching);
    }
  }
}

MmTable MmBuildTable(const BlockPartition& partition) {
  const Instance& instance = partition.instance();
  MmTable table;
  table.s_value.assign(instance.y(), ExtendedCost::Unreachable());
  table.t_value.assign(instance.z(), ExtendedCost::Unreachable());
  table.s_split.assign(instance.y(), -1);
  table.t_split.assign(instance.z(), -1);
  for (int w = 0; w + 1 < partition.num_blocks(); ++w) {
    const Block& left_block = partition.block(w);
    std::vector<ExtendedCost> left(left_block.size + 1);
    if (w == 0) {
      left[0] = ExtendedCost(0);
    } else {
      const Block& before = partition.block(w - 1);
      left[0] = table.value(before.side, before.first + before.size - 1);
    }
    for (int h = 1; h <= left_block.size; ++h) {
      left[h] = table.value(left_block.side, left_block.first + h - 1);
    }
    BlockPairSweep sweep(Gaps(partition, w), std::move(left));
    const Block& right_block = partition.block(w + 1);
    auto& values = right_block.side == Side::kS ? table.s_value : table.t_value;
    auto& splits = right_block.side == Side::kS ? table.s_split : table.t_split;
    while (!sweep.done()) {
      const BlockPairSweep::Step step = sweep.Next();
      values[right_block.first + step.i - 1] = step.c;
      splits[right_block.first + step.i - 1] = step.split;
    }
    table.steps += sweep.steps();
  }
  return table;
}

Matching MmReconstruct(const BlockPartition& partition, const MmTable& table) {
  Matching matching;
  const int last_block = partition.num_blocks() - 1;
  Side side = partition.block(last_block).side;
  int index = partition.block(last_block).first + partition.block(last_block).size - 1;
  while (true) {
    const int right = partition.block_of(side, index);
    const int w = right - 1;
    const int i = partition.position_in_block(side, index) + 1;
    const int split = table.split(side, index);
    if (w < 0 || split < 0) {
      throw std::logic_error("reconstruction reached an unreachable entry");
    }
    AppendBlockPairEdges(partition, w, split, i, &matching);
    if (split >= 1) {
      side = partition.block(w).side;
      index = partition.block(w).first + split - 1;
    } else if (w == 0) {
      break;
    } else {
      side = partition.block(w - 1).side;
      index = partition.block(w - 1).first + partition.block(w - 1).size - 1;
    }
  }
  matching.Canonicalize();
  return matching;
}

SolveReport MmSolve(const Instance& instance) {
  if (instance.y() == 0 || instance.z() == 0) {
    throw InstanceError(InstanceErrorCode::kEmptySide, "a point set is empty");
  }
  const auto start = std::chrono::steady_clock::now();
  const BlockPartition partition(instance);
  const MmTable table = MmBuildTable(partition);
  SolveReport report;
  report.algorithm = "mm";
  report.witness = MmReconstruct(partition, table);
  report.cost = CostOf(instance, report.witness);
  report.n = instance.n();
  report.steps = table.steps + static_cast<int64_t>(report.witness.pairs.size());
  report.millis = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  const Block& last = partition.block(partition.num_blocks() - 1);
  const ExtendedCost optimum = table.value(last.side, last.first + last.size - 1);
  if (!optimum.finite() || optimum.value() != report.cost) {
    throw std::logic_error("witness cost differs from the table optimum");
  }
  return report;
}

}  // namespace linematch
