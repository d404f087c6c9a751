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

// Exact solver for many-to-many matching with demands. Demand units are
// served on a sparse candidate graph (every point's nearest opposite points,
// at least as many as its demand) as a min-cost flow solved by cost scaling;
// the final node prices certify optimality against every pair of the full
// bipartite graph, and violated pairs are added until the certificate holds.

#ifndef LINEMATCH_OMMD_SOLVER_H_
#define LINEMATCH_OMMD_SOLVER_H_

#include <cstdint>
#include <vector>

#include "linematch/core.h"

namespace linematch {

struct OmmdOptions {
  // Each point is offered its demand_factor * demand + extra_candidates
  // nearest opposite points.
  int demand_factor = 2;
  int extra_candidates = 4;
  // Largest number of violated pairs added per point and certificate round.
  int max_additions_per_point = 4;
};

struct OmmdStats {
  int64_t candidate_pairs = 0;
  int certificate_rounds = 0;
  int64_t added_pairs = 0;
  bool wide_arithmetic = false;
};

// Nearest opposite points of every point, factor * demand(p) + extra of them
// (capped by the opposite set size), as sorted unique pairs. Taking all of
// them is a feasible matching when factor >= 1.
std::vector<Pair> CandidatePairs(const Instance& instance, int factor, int extra);

// Throws InfeasibleError when CheckFeasible fails and InstanceError on an
// empty side.
SolveReport OmmdSolve(const Instance& instance, const OmmdOptions& options = {},
                      OmmdStats* stats = nullptr);

}  // namespace linematch

#endif  // LINEMATCH_OMMD_SOLVER_H_
