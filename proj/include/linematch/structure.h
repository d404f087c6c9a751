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

// Structural properties of optimal matchings, checked on solver and oracle
// witnesses. Coordinate comparisons below are strict where a property relies
// on a strictly cheaper exchange.

#ifndef LINEMATCH_STRUCTURE_H_
#define LINEMATCH_STRUCTURE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "linematch/blocks.h"
#include "linematch/core.h"

namespace linematch {

struct StructureViolation {
  std::string rule;
  std::vector<Pair> pairs;
  std::string detail;
};

struct StructureReport {
  int64_t count = 0;
  // At most a handful of examples are kept.
  std::vector<StructureViolation> examples;
  bool ok() const { return count == 0; }
};

// Skip-edge closure: for (a,d) in M and points b, c with a < b < c < d in
// coordinate, b in the set of d and c in the set of a, M also contains
// (a,b) or (c,d). Replacing (a,d) by (a,b) and (c,d) otherwise lowers the
// cost by c - b without lowering any degree.
StructureReport CheckSkipEdgeClosure(const Instance& instance,
                                     const Matching& matching);

// Full-fan reading of skip-edge closure: for (a,d) in M with d beyond the
// block adjacent to a, either a is matched to every point of the skipped
// opposite-set blocks or d is matched to every point of the skipped
// same-set blocks. Some instances have no optimal matching that satisfies
// it.
StructureReport CheckFullFanClosure(const Instance& instance,
                                    const Matching& matching);

// Crossing closure: for (a,c), (b,d) in M with a <= b < c <= d in
// coordinate, a and d in one set and b and c in the other, M also contains
// (a,b) or (c,d). Otherwise swapping to (a,b), (c,d) lowers the cost by
// 2 (c - b) with unchanged degrees.
StructureReport CheckCrossingClosure(const Instance& instance,
                                     const Matching& matching);

// Matchings of the undemanded problem: every pair joins adjacent blocks.
StructureReport CheckAdjacentBlocksOnly(const Instance& instance,
                                        const Matching& matching);

// Within every block, no point matched into the next block precedes a point
// matched into the previous block.
StructureReport CheckSeparatingPoints(const Instance& instance,
                                      const Matching& matching);

struct ExchangeCosts {
  Cost parallel = 0;  // cost of (a, b) and (a2, b2)
  Cost crossed = 0;   // cost of (a, b2) and (a2, b)
};

// Both pairings of a < a2 <= b < b2; they are equal.
ExchangeCosts ExchangeIdentity(Coord a, Coord a2, Coord b, Coord b2);

}  // namespace linematch

#endif  // LINEMATCH_STRUCTURE_H_
