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

// Seeded instance generation, differential comparison of solvers and
// scaling benchmarks with log-log exponent fits.

#ifndef LINEMATCH_HARNESS_H_
#define LINEMATCH_HARNESS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "linematch/core.h"

namespace linematch {

enum class DemandShape { kUniform, kOnes, kHeavy };

// Accepts "uniform", "ones" and "heavy"; throws std::invalid_argument.
DemandShape ParseDemandShape(const std::string& name);
const char* DemandShapeName(DemandShape shape);

struct GenSpec {
  uint64_t seed = 0;
  int y = 1;
  int z = 1;
  // Coordinates are drawn uniformly from [0, coord_range].
  Coord coord_range = 100;
  Demand max_demand = 1;
  DemandShape shape = DemandShape::kUniform;
  // Clamp every demand to the size of the opposite set.
  bool guarantee_feasible = true;
};

// Deterministic in the spec. Throws std::invalid_argument when a set would
// be empty, the coordinate range is negative or max_demand < 1.
Instance GenInstance(const GenSpec& spec);

// Outcome of one algorithm on one instance.
struct AlgoOutcome {
  enum class Status { kOk, kInfeasible, kTooLarge, kError };
  Status status = Status::kOk;
  Cost cost = 0;
  Matching witness;
  int64_t steps = 0;
  double millis = 0.0;
  std::string message;
};

const char* StatusName(AlgoOutcome::Status status);

struct NamedSolver {
  std::string name;
  std::function<AlgoOutcome(const Instance&)> run;
};

inline constexpr int kCompareEnumLimit = 36;

// Built-in solvers: "ommd", "mm", "mcf" and "enum" (pair limit
// `enum_limit`). Throws std::invalid_argument for other names.
NamedSolver BuiltinSolver(const std::string& name,
                          int enum_limit = kCompareEnumLimit);

struct CompareSpec {
  int trials = 100;
  uint64_t seed = 0;
  int max_n = 12;
  Demand max_demand = 1;
  Coord coord_range = 100;
  DemandShape shape = DemandShape::kUniform;
  // Keep y * z at or below this bound (0 = unbounded); set automatically
  // when "enum" takes part.
  int max_pairs = 0;
  int jobs = 1;
};

struct Mismatch {
  int trial = -1;
  uint64_t seed = 0;
  nlohmann::json instance;
  std::vector<std::string> algos;
  std::vector<AlgoOutcome> outcomes;
  std::string reason;
};

struct CompareReport {
  int trials = 0;
  int agreed = 0;
  std::optional<Mismatch> first_mismatch;
  nlohmann::json ToJson() const;
};

// Instance of trial `trial`: sizes, demands and coordinates all derive from
// spec.seed and the trial index.
Instance CompareInstance(const CompareSpec& spec, int trial, uint64_t* seed_out);

// Runs every solver on the same instance and returns the disagreement, if
// any: differing statuses, differing costs among successful runs, or a
// witness that fails verification or does not price at the reported cost.
// Solvers named "mm" are checked against unit demands.
std::optional<std::string> Disagreement(const Instance& instance,
                                        const std::vector<NamedSolver>& solvers,
                                        std::vector<AlgoOutcome>* outcomes);

// Stops at the first (lowest-index) mismatching trial.
CompareReport Compare(const std::vector<NamedSolver>& solvers,
                      const CompareSpec& spec);

// Re-runs a mismatch document's instance through the named solvers.
std::optional<std::string> Replay(const nlohmann::json& mismatch_instance,
                                  const std::vector<NamedSolver>& solvers);

enum class DemandScale { kLinear, kConst };
DemandScale ParseDemandScale(const std::string& name);

struct BenchSpec {
  std::vector<int> sizes;
  uint64_t seed = 0;
  DemandScale scale = DemandScale::kLinear;
  // Largest demand n / linear_divisor (at least 1) on the linear scale.
  int linear_divisor = 256;
  // Largest demand on the constant scale.
  Demand const_demand = 1;
  // Coordinates are drawn from [0, coord_factor * n].
  int coord_factor = 4;
  int repeats = 3;
};

struct BenchRecord {
  int n = 0;
  std::string algo;
  uint64_t seed = 0;
  int64_t steps = 0;
  double millis = 0.0;
  Cost cost = 0;
};

struct BenchResult {
  std::vector<BenchRecord> records;
  double time_slope = 0.0;
  double step_slope = 0.0;
};

// Instance used for size n; y = n / 2, z = n - y.
Instance BenchInstance(const BenchSpec& spec, int n);

// Sizes must be ascending. Each size is solved spec.repeats times; the
// record keeps the median wall time and median step count.
BenchResult BenchRun(const NamedSolver& solver, const BenchSpec& spec);

// Least-squares slope of log(y) against log(x).
double LogLogSlope(const std::vector<double>& x, const std::vector<double>& y);

// Header n,algo,seed,steps,millis,cost followed by one line per record.
std::string BenchCsv(const std::vector<BenchRecord>& records);

}  // namespace linematch

#endif  // LINEMATCH_HARNESS_H_
