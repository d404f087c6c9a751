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

#include "linematch/circulation.h"

#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "linematch/core.h"
#include "linematch/oracle.h"

namespace linematch {
namespace {

// Demand network of an instance: a hub feeds every s point up to z units and
// drains every t point up to y units, pair arcs carry one unit each.
struct DemandNetwork {
  std::vector<int> pair_arcs;
  std::vector<Cost> pair_costs;
  std::vector<Pair> pairs;
};

template <typename Value>
DemandNetwork BuildHubNetwork(const Instance& instance,
                              CostScalingFlow<Value>* flow, bool pairs_now,
                              std::vector<Pair>* deferred) {
  const int y = instance.y();
  const int z = instance.z();
  const int hub = y + z;
  Cost balance = 0;
  for (int i = 0; i < y; ++i) {
    flow->SetSupply(i, instance.s_demands[i]);
    balance -= instance.s_demands[i];
    flow->AddArc(hub, i, z - instance.s_demands[i], 0);
  }
  for (int j = 0; j < z; ++j) {
    flow->SetSupply(y + j, -instance.t_demands[j]);
    balance += instance.t_demands[j];
    flow->AddArc(y + j, hub, y - instance.t_demands[j], 0);
  }
  flow->SetSupply(hub, static_cast<int64_t>(balance));
  DemandNetwork network;
  for (int i = 0; i < y; ++i) {
    for (int j = 0; j < z; ++j) {
      if (!pairs_now && (i + j) % 2 == 1) {
        deferred->push_back({i, j});
        continue;
      }
      network.pairs.push_back({i, j});
      network.pair_costs.push_back(PairCost(instance, i, j));
      network.pair_arcs.push_back(
          flow->AddArc(i, y + j, 1, PairCost(instance, i, j)));
    }
  }
  return network;
}

template <typename Value>
Cost FlowCost(const CostScalingFlow<Value>& flow, const DemandNetwork& network) {
  Cost total = 0;
  for (std::size_t a = 0; a < network.pair_arcs.size(); ++a) {
    total += flow.Flow(network.pair_arcs[a]) * network.pair_costs[a];
  }
  return total;
}

Instance RandomFeasible(std::mt19937_64* rng) {
  const int y = 1 + static_cast<int>((*rng)() % 8);
  const int z = 1 + static_cast<int>((*rng)() % 8);
  std::vector<Coord> s(y), t(z);
  std::vector<Demand> alpha(y), beta(z);
  for (Coord& x : s) x = static_cast<Coord>((*rng)() % 101);
  for (Coord& x : t) x = static_cast<Coord>((*rng)() % 101);
  for (Demand& d : alpha) d = 1 + static_cast<Demand>((*rng)() % z);
  for (Demand& d : beta) d = 1 + static_cast<Demand>((*rng)() % y);
  return MakeInstance(s, alpha, t, beta);
}

TEST(CostScalingFlowTest, SinglePath) {
  CostScalingFlow<int64_t> flow(3);
  const int first = flow.AddArc(0, 1, 5, 2);
  const int second = flow.AddArc(1, 2, 5, 3);
  const int shortcut = flow.AddArc(0, 2, 2, 7);
  flow.SetSupply(0, 4);
  flow.SetSupply(2, -4);
  ASSERT_TRUE(flow.Solve());
  EXPECT_EQ(flow.Flow(first), 4);
  EXPECT_EQ(flow.Flow(second), 4);
  EXPECT_EQ(flow.Flow(shortcut), 0);
}

TEST(CostScalingFlowTest, SaturatesCheapPathFirst) {
  CostScalingFlow<int64_t> flow(3);
  const int first = flow.AddArc(0, 1, 3, 1);
  const int second = flow.AddArc(1, 2, 3, 1);
  const int shortcut = flow.AddArc(0, 2, 5, 4);
  flow.SetSupply(0, 5);
  flow.SetSupply(2, -5);
  ASSERT_TRUE(flow.Solve());
  EXPECT_EQ(flow.Flow(first), 3);
  EXPECT_EQ(flow.Flow(second), 3);
  EXPECT_EQ(flow.Flow(shortcut), 2);
}

TEST(CostScalingFlowTest, RejectsUnbalancedSupply) {
  CostScalingFlow<int64_t> flow(2);
  flow.AddArc(0, 1, 5, 1);
  flow.SetSupply(0, 3);
  flow.SetSupply(1, -2);
  EXPECT_FALSE(flow.Solve());
}

TEST(CostScalingFlowTest, RejectsInsufficientCapacity) {
  CostScalingFlow<int64_t> flow(2);
  flow.AddArc(0, 1, 1, 1);
  flow.SetSupply(0, 2);
  flow.SetSupply(1, -2);
  EXPECT_FALSE(flow.Solve());
}

TEST(CostScalingFlowTest, RejectsNegativeInputs) {
  CostScalingFlow<int64_t> flow(2);
  EXPECT_THROW(flow.AddArc(0, 1, -1, 1), std::invalid_argument);
  EXPECT_THROW(flow.AddArc(0, 1, 1, -1), std::invalid_argument);
}

TEST(CostScalingFlowTest, MatchesFlowReferee) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    const Instance instance = RandomFeasible(&rng);
    CostScalingFlow<int64_t> flow(instance.n() + 1);
    const DemandNetwork network =
        BuildHubNetwork(instance, &flow, true, nullptr);
    ASSERT_TRUE(flow.Solve());
    const OracleResult referee = OracleMcf(instance);
    ASSERT_EQ(referee.status, OracleStatus::kOk);
    ASSERT_EQ(FlowCost(flow, network), referee.cost)
        << SaveInstance(instance).dump();
  }
}

TEST(CostScalingFlowTest, WideValuesMatchNarrow) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance instance = RandomFeasible(&rng);
    CostScalingFlow<int64_t> narrow(instance.n() + 1);
    CostScalingFlow<__int128> wide(instance.n() + 1);
    const DemandNetwork a = BuildHubNetwork(instance, &narrow, true, nullptr);
    const DemandNetwork b = BuildHubNetwork(instance, &wide, true, nullptr);
    ASSERT_TRUE(narrow.Solve());
    ASSERT_TRUE(wide.Solve());
    ASSERT_EQ(FlowCost(narrow, a), FlowCost(wide, b));
  }
}

TEST(CostScalingFlowTest, ResolveAfterAddingArcsReachesOptimum) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    const Instance instance = RandomFeasible(&rng);
    // Half of the pair arcs may not admit a feasible flow on their own; the
    // hub arcs plus all pairs always do.
    CostScalingFlow<int64_t> staged(instance.n() + 1);
    std::vector<Pair> deferred;
    DemandNetwork network = BuildHubNetwork(instance, &staged, false, &deferred);
    if (!staged.Solve()) continue;
    for (const Pair& pair : deferred) {
      network.pairs.push_back(pair);
      network.pair_costs.push_back(PairCost(instance, pair.s, pair.t));
      network.pair_arcs.push_back(staged.AddArc(
          pair.s, instance.y() + pair.t, 1, PairCost(instance, pair.s, pair.t)));
    }
    ASSERT_TRUE(staged.Resolve());
    const OracleResult referee = OracleMcf(instance);
    ASSERT_EQ(FlowCost(staged, network), referee.cost)
        << SaveInstance(instance).dump();
    for (std::size_t a = 0; a < network.pairs.size(); ++a) {
      const Pair& pair = network.pairs[a];
      if (staged.Flow(network.pair_arcs[a]) == 0) {
        ASSERT_GE(staged.ReducedCost(pair.s, instance.y() + pair.t,
                                     network.pair_costs[a]),
                  -1);
      }
    }
  }
}

TEST(CostScalingFlowTest, ResolveWithoutNewArcsKeepsFlow) {
  CostScalingFlow<int64_t> flow(3);
  const int first = flow.AddArc(0, 1, 3, 1);
  flow.AddArc(1, 2, 3, 1);
  flow.AddArc(0, 2, 5, 4);
  flow.SetSupply(0, 5);
  flow.SetSupply(2, -5);
  ASSERT_TRUE(flow.Solve());
  ASSERT_TRUE(flow.Resolve());
  EXPECT_EQ(flow.Flow(first), 3);
}

}  // namespace
}  // namespace linematch
