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

// Building blocks of the round-based view of demands: one demand unit per
// point and round, split points of adjacent block pairs, fans that reach
// past the adjacent block, and the min-plus tail recurrence over demand
// units. Each is exact for the subproblem it states.

#ifndef LINEMATCH_ROUNDS_H_
#define LINEMATCH_ROUNDS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "linematch/blocks.h"
#include "linematch/core.h"
#include "linematch/extended_cost.h"

namespace linematch {

// Indices below refer to positions in the `left` and `right` coordinate
// lists of a round: Pair{i, j} joins left[i] and right[j].
struct RoundMatch {
  std::vector<Pair> added;
  Cost cost = 0;
  int64_t steps = 0;
};

// One round k between two point groups: every point whose demand is at
// least k + 1 gains one new partner from the other group, without reusing a
// pair from `previous`, at minimum added cost. Returns nullopt when the
// groups cannot satisfy the round on their own.
std::optional<RoundMatch> DemandRoundMatch(const std::vector<Coord>& left,
                                           const std::vector<Demand>& left_demands,
                                           const std::vector<Coord>& right,
                                           const std::vector<Demand>& right_demands,
                                           int k,
                                           const std::vector<Pair>& previous);

struct SplitChoice {
  int i = 0;       // 1-based index into A_{w+1}
  int split = -1;  // h: a_{h+1..s} are matched into b_1..b_i
  ExtendedCost value;
};

// Split point for every prefix b_1..b_i of the block pair (A_w, A_{w+1})
// given the prefix values left[h] = C(a_h), h = 0..s.
std::vector<SplitChoice> SeparatingScan(const BlockPartition& partition, int w,
                                        const std::vector<ExtendedCost>& left);

// Same quantities by trying every split h and every two-block structure.
std::vector<SplitChoice> SeparatingScanExhaustive(
    const BlockPartition& partition, int w, const std::vector<ExtendedCost>& left);

// Column C(b_1..b_t) of one round over the block pair (A_w, A_{w+1}) when
// every point of A_{w+1} takes one partner: the minimum of the X, Y and Z
// branches at each index.
std::vector<ExtendedCost> CaseAColumn(const BlockPartition& partition, int w,
                                      const std::vector<ExtendedCost>& left);

struct Fan {
  std::vector<int> partners;  // sorted indices on the opposite side
  int farthest_block = -1;    // block of the farthest new partner
  Cost cost = 0;
};

enum class Direction { kLeft, kRight };

// The `count` nearest opposite points of p on one side of p that are not in
// `existing` (sorted opposite indices). Returns nullopt when fewer exist.
std::optional<Fan> CrossPartitionSatisfy(const BlockPartition& partition,
                                         PointRef p, Direction direction,
                                         int count,
                                         const std::vector<int>& existing);

// One step of the tail recurrence over demand units: for k = 1..K,
// result[k] = min over j = 1..k of previous[j] + unit_cost[k - j].
// previous has K + 1 entries (index 0 unused), unit_cost has K entries
// (index 0..K-1). result[0] is unreachable.
std::vector<ExtendedCost> TailDemandDp(const std::vector<ExtendedCost>& previous,
                                       const std::vector<ExtendedCost>& unit_cost);

}  // namespace linematch

#endif  // LINEMATCH_ROUNDS_H_
