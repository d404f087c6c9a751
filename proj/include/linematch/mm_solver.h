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

// Linear-time dynamic program for the many-to-many matching problem without
// demands (every demand treated as 1). The table C(q) holds the cost of an
// optimal matching of all points up to q that uses only pairs inside that
// prefix; C is unreachable on the first block.

#ifndef LINEMATCH_MM_SOLVER_H_
#define LINEMATCH_MM_SOLVER_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "linematch/blocks.h"
#include "linematch/core.h"
#include "linematch/extended_cost.h"

namespace linematch {

// Sweep over b_1..b_t of an adjacent block pair (A_w, A_{w+1}) given the
// prefix values left[h] = C(a_h), h = 0..s, where C(a_0) is the value of the
// last point of A_{w-1} (zero for w = 0, the empty prefix).
//
// For the prefix b_1..b_i the points a_{h+1}..a_s are matched into
// b_1..b_i and a_1..a_h are settled by the prefix. With m = s - h:
//   X(b_i): m > i, the surplus a's attach to b_1;
//   Y(b_i): m = i, pairwise matching a_{s-i+j} - b_j;
//   Z(b_i): m < i, the surplus b's attach to a_s.
// X is a prefix minimum over split points, Y is closed form and Z follows
// Z(b_i) = min(Y(b_{i-1}), Z(b_{i-1})) + e_s + f_i; each step is O(1).
class BlockPairSweep {
 public:
  enum class Branch { kX, kY, kZ, kNone };

  struct Step {
    int i = 0;
    ExtendedCost x;
    ExtendedCost y;
    ExtendedCost z;
    ExtendedCost c;
    Branch branch = Branch::kNone;
    int split = -1;  // h of the chosen branch, -1 when unreachable
  };

  BlockPairSweep(const GapView& gaps, std::vector<ExtendedCost> left);

  const GapView& gaps() const { return gaps_; }
  int next_index() const { return i_ + 1; }
  bool done() const { return i_ == gaps_.t(); }
  // Advances to b_{next_index()}.
  Step Next();
  // Step of the last computed index; i = 0 before the first call to Next.
  const Step& last() const { return last_; }
  const std::vector<ExtendedCost>& left() const { return left_; }
  int64_t steps() const { return steps_; }

 private:
  GapView gaps_;
  std::vector<ExtendedCost> left_;
  // g_[h] = C(a_h) + e_{h+1} + ... + e_s.
  std::vector<ExtendedCost> g_;
  // Prefix minimum of g_ over 0..h with ties resolved toward the larger h.
  std::vector<ExtendedCost> prefix_min_;
  std::vector<int> prefix_arg_;
  int i_ = 0;
  Step last_;
  ExtendedCost y_prev_;
  int y_prev_split_ = -1;
  ExtendedCost z_prev_;
  int z_prev_split_ = -1;
  int64_t steps_ = 0;
};

// Closed forms for the first block pair (w = 0, so C(a_h) is unreachable for
// h >= 1): C(b_i) = sum_{j<=s} e_j + sum_{j<=i} f_j when i <= s and
// (i - s) e_s + sum_{j<=s} e_j + sum_{j<=i} f_j when i > s.
// Throws std::invalid_argument when gaps.w() != 0.
Cost Case0Cost(const GapView& gaps, int i);

// Advances `sweep` to index i, which must equal sweep->next_index().
BlockPairSweep::Step Case4XyzStep(BlockPairSweep* sweep, int i);

// Degree rule for extending C(b_{i-1}) to C(b_i) from the structure of the
// optimal prefix for b_{i-1} (the sweep's last step, i = last().i + 1):
// when deg(b_1) > 1 one surplus edge moves from b_1 to b_i, giving
// C(b_{i-1}) + f_i - f_1; when deg(b_1) = 1 and deg(a_s) > 1 the new point
// joins the fan of a_s, giving C(b_{i-1}) + f_i + e_s. Returns nullopt when
// neither condition holds or C(b_{i-1}) is unreachable.
std::optional<ExtendedCost> DegreeCaseStep(const BlockPairSweep& sweep, int i);

// Appends the pairs of the two-block structure chosen by a sweep step: block
// pair (w, w+1), split h, prefix length i.
void AppendBlockPairEdges(const BlockPartition& partition, int w, int split,
                          int i, Matching* matching);

struct MmTable {
  // Indexed by sorted index per side.
  std::vector<ExtendedCost> s_value;
  std::vector<ExtendedCost> t_value;
  std::vector<int> s_split;
  std::vector<int> t_split;
  int64_t steps = 0;

  ExtendedCost value(Side side, int index) const {
    return side == Side::kS ? s_value[index] : t_value[index];
  }
  int split(Side side, int index) const {
    return side == Side::kS ? s_split[index] : t_split[index];
  }
};

MmTable MmBuildTable(const BlockPartition& partition);
Matching MmReconstruct(const BlockPartition& partition, const MmTable& table);

// Exact minimum-cost many-to-many matching with all demands taken as 1.
// Throws InstanceError on an empty side.
SolveReport MmSolve(const Instance& instance);

}  // namespace linematch

#endif  // LINEMATCH_MM_SOLVER_H_
