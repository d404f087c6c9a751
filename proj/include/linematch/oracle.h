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

// Two independent exact referees: exhaustive enumeration of pair subsets for
// tiny instances and a min-cost circulation with lower bounds solved by
// successive shortest augmenting paths.

#ifndef LINEMATCH_ORACLE_H_
#define LINEMATCH_ORACLE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "linematch/core.h"

namespace linematch {

enum class OracleStatus { kOk, kInfeasible, kTooLarge };

struct OracleResult {
  OracleStatus status = OracleStatus::kOk;
  Cost cost = 0;
  Matching witness;
  // Node potentials of the flow referee, indexed like FlowNetwork nodes:
  // s points, then t points, then source and sink. Empty for enumeration.
  std::vector<Cost> potentials;
  int64_t steps = 0;
  std::string message;
};

inline constexpr int kDefaultEnumLimit = 20;

// Exhaustive minimum over all subsets of the y*z pairs that satisfy every
// demand. Among co-optimal subsets the witness is the lexicographically least
// sorted pair list. Returns kTooLarge when y*z exceeds `limit`.
OracleResult OracleEnum(const Instance& instance, int limit = kDefaultEnumLimit);

// Circulation network used by the flow referee: source -> s_i with bounds
// [alpha_i, z], s_i -> t_j with capacity 1 and cost |s_i - t_j|,
// t_j -> sink with bounds [beta_j, y], and a free return arc sink -> source.
struct FlowArc {
  int tail = 0;
  int head = 0;
  int64_t lower = 0;
  int64_t upper = 0;
  Cost cost = 0;
  int64_t flow = 0;
};

struct FlowNetwork {
  int num_nodes = 0;
  int source = 0;
  int sink = 0;
  std::vector<FlowArc> arcs;
  // Index of the first s_i -> t_j arc; arc (i, j) is pair_arc_base + i*z + j.
  int pair_arc_base = 0;
};

FlowNetwork BuildFlowNetwork(const Instance& instance);

// Loads the flow implied by a matching (pair arcs carry 1 per pair, side
// arcs carry the degrees, the return arc carries the pair count).
void ApplyMatchingFlow(const Instance& instance, const Matching& matching,
                       FlowNetwork* network);

// Min-cost feasible circulation by successive shortest paths with node
// potentials, after the standard lower-bound transformation.
OracleResult OracleMcf(const Instance& instance);

struct CertificateCheck {
  bool ok = true;
  int arc = -1;  // offending arc of BuildFlowNetwork, -1 for node failures
  std::string reason;
};

// Checks bounds, conservation and complementary slackness of `result`'s
// witness flow against its potentials: an arc below its upper bound needs a
// non-negative reduced cost and an arc above its lower bound a non-positive
// one.
CertificateCheck CertifyOptimal(const OracleResult& result,
                                const Instance& instance);

}  // namespace linematch

#endif  // LINEMATCH_ORACLE_H_
