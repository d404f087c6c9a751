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

#include "linematch/ommd_solver.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "linematch/mm_solver.h"
#include "linematch/oracle.h"

namespace linematch {
namespace {

Instance RandomInstance(std::mt19937_64* rng, int max_n, Demand max_demand,
                        Coord range) {
  const int n = 2 + static_cast<int>((*rng)() % (max_n - 1));
  const int y = 1 + static_cast<int>((*rng)() % (n - 1));
  const int z = n - y;
  std::vector<Coord> s(y), t(z);
  std::vector<Demand> alpha(y), beta(z);
  for (Coord& x : s) x = static_cast<Coord>((*rng)() % (range + 1));
  for (Coord& x : t) x = static_cast<Coord>((*rng)() % (range + 1));
  for (Demand& d : alpha) {
    d = std::min<Demand>(1 + static_cast<Demand>((*rng)() % max_demand), z);
  }
  for (Demand& d : beta) {
    d = std::min<Demand>(1 + static_cast<Demand>((*rng)() % max_demand), y);
  }
  return MakeInstance(s, alpha, t, beta);
}

Cost Solve(const Instance& instance) {
  const SolveReport report = OmmdSolve(instance);
  EXPECT_TRUE(VerifyMatching(instance, report.witness).ok);
  EXPECT_EQ(CostOf(instance, report.witness), report.cost);
  return report.cost;
}

TEST(OmmdSolveTest, DemandExamples) {
  EXPECT_EQ(Solve(MakeInstance({0}, {2}, {1, 2}, {1, 1})), 3);
  EXPECT_EQ(Solve(MakeInstance({0, 10}, {1, 1}, {4, 6}, {2, 1})), 14);
  EXPECT_EQ(Solve(MakeInstance({0, 1, 2}, {1, 1, 1}, {10}, {3})), 27);
  EXPECT_EQ(Solve(MakeInstance({0, 6}, {2, 1}, {2, 3}, {1, 1})), 8);
  EXPECT_EQ(OmmdSolve(MakeInstance({0}, {1}, {5}, {1})).algorithm, "ommd");
}

TEST(OmmdSolveTest, InfeasibleThrows) {
  EXPECT_THROW(OmmdSolve(MakeInstance({0}, {2}, {1}, {1})), InfeasibleError);
}

TEST(OmmdSolveTest, RejectsBadOptions) {
  OmmdOptions options;
  options.demand_factor = 0;
  EXPECT_THROW(OmmdSolve(MakeInstance({0}, {1}, {1}, {1}), options),
               std::invalid_argument);
}

TEST(OmmdSolveTest, EmptySideThrows) {
  Instance instance = MakeInstance({0}, {1}, {1}, {1});
  instance.t_coords.clear();
  instance.t_demands.clear();
  instance.t_original.clear();
  EXPECT_THROW(OmmdSolve(instance), InstanceError);
}

TEST(OmmdSolveTest, MatchesFlowReferee) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 1500; ++trial) {
    const Instance instance = RandomInstance(&rng, 60, 5, 100);
    const OracleResult referee = OracleMcf(instance);
    ASSERT_EQ(referee.status, OracleStatus::kOk);
    ASSERT_EQ(Solve(instance), referee.cost) << SaveInstance(instance).dump();
  }
}

TEST(OmmdSolveTest, NarrowWindowsStillExact) {
  std::mt19937_64 rng(61);
  OmmdOptions options;
  options.demand_factor = 1;
  options.extra_candidates = 0;
  options.max_additions_per_point = 1;
  int rounds = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const Instance instance = RandomInstance(&rng, 40, 5, 1000);
    OmmdStats stats;
    const SolveReport report = OmmdSolve(instance, options, &stats);
    rounds += stats.certificate_rounds;
    ASSERT_TRUE(VerifyMatching(instance, report.witness).ok);
    ASSERT_EQ(report.cost, OracleMcf(instance).cost)
        << SaveInstance(instance).dump();
  }
  EXPECT_GT(rounds, 0);
}

TEST(OmmdSolveTest, UnitDemandsMatchMm) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 500; ++trial) {
    const Instance instance = RandomInstance(&rng, 120, 1, 1000);
    ASSERT_EQ(Solve(instance), MmSolve(instance).cost);
  }
}

TEST(OmmdSolveTest, LargeCoordinatesUseWideArithmetic) {
  const Coord big = static_cast<Coord>(1) << 60;
  const Instance instance =
      MakeInstance({-big, big}, {1, 2}, {-big + 1, 0, big - 1}, {1, 1, 1});
  OmmdStats stats;
  const SolveReport report = OmmdSolve(instance, {}, &stats);
  EXPECT_TRUE(stats.wide_arithmetic);
  EXPECT_EQ(report.cost, OracleMcf(instance).cost);
}

TEST(OmmdSolveTest, RaisingDemandNeverLowersCost) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    Instance instance = RandomInstance(&rng, 30, 3, 100);
    const Cost before = Solve(instance);
    const int i = static_cast<int>(rng() % instance.y());
    if (instance.s_demands[i] >= instance.z()) continue;
    ++instance.s_demands[i];
    ASSERT_GE(Solve(instance), before);
  }
}

TEST(OmmdSolveTest, TranslationAndReflectionInvariant) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance instance = RandomInstance(&rng, 40, 4, 100);
    std::vector<Coord> s = instance.s_coords;
    std::vector<Coord> t = instance.t_coords;
    std::vector<Coord> s_moved, t_moved;
    for (Coord x : s) s_moved.push_back(-x + 12345);
    for (Coord x : t) t_moved.push_back(-x + 12345);
    const Instance moved =
        MakeInstance(s_moved, instance.s_demands, t_moved, instance.t_demands);
    ASSERT_EQ(Solve(instance), Solve(moved));
  }
}

TEST(CandidatePairsTest, WindowSizesAndFeasibility) {
  const Instance instance =
      MakeInstance({0, 10}, {1, 1}, {1, 2, 3, 4, 11}, {1, 1, 1, 1, 1});
  const std::vector<Pair> pairs = CandidatePairs(instance, 1, 0);
  EXPECT_TRUE(std::is_sorted(pairs.begin(), pairs.end()));
  EXPECT_EQ(std::adjacent_find(pairs.begin(), pairs.end()), pairs.end());
  // s0 -> t0, s1 -> t4, and each t takes its nearest s.
  EXPECT_EQ(pairs, (std::vector<Pair>{{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 4}}));
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance random = RandomInstance(&rng, 30, 4, 100);
    Matching all;
    all.pairs = CandidatePairs(random, 1, 0);
    ASSERT_TRUE(VerifyMatching(random, all).ok);
  }
}

}  // namespace
}  // namespace linematch
