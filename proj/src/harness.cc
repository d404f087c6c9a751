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

#include "linematch/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <climits>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "linematch/mm_solver.h"
#include "linematch/ommd_solver.h"
#include "linematch/oracle.h"

namespace linematch {
namespace {

uint64_t Mix(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double ElapsedMillis(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

Demand DrawDemand(std::mt19937_64* rng, Demand max_demand, DemandShape shape) {
  switch (shape) {
    case DemandShape::kOnes:
      return 1;
    case DemandShape::kUniform:
      return std::uniform_int_distribution<Demand>(1, max_demand)(*rng);
    case DemandShape::kHeavy: {
      const double u = std::uniform_real_distribution<double>(0.0, 1.0)(*rng);
      const double scaled = std::floor(static_cast<double>(max_demand) *
                                       std::pow(u, 4.0));
      return std::clamp<Demand>(static_cast<Demand>(scaled) + 1, 1, max_demand);
    }
  }
  return 1;
}

Instance UnitDemands(const Instance& instance) {
  Instance unit = instance;
  std::fill(unit.s_demands.begin(), unit.s_demands.end(), 1);
  std::fill(unit.t_demands.begin(), unit.t_demands.end(), 1);
  return unit;
}

template <typename T>
T Median(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  return values[values.size() / 2];
}

AlgoOutcome FromOracle(const OracleResult& result) {
  AlgoOutcome outcome;
  switch (result.status) {
    case OracleStatus::kOk:
      outcome.status = AlgoOutcome::Status::kOk;
      break;
    case OracleStatus::kInfeasible:
      outcome.status = AlgoOutcome::Status::kInfeasible;
      break;
    case OracleStatus::kTooLarge:
      outcome.status = AlgoOutcome::Status::kTooLarge;
      break;
  }
  outcome.cost = result.cost;
  outcome.witness = result.witness;
  outcome.steps = result.steps;
  outcome.message = result.message;
  return outcome;
}

AlgoOutcome FromReport(const SolveReport& report) {
  AlgoOutcome outcome;
  outcome.cost = report.cost;
  outcome.witness = report.witness;
  outcome.steps = report.steps;
  return outcome;
}

nlohmann::json OutcomeJson(const std::string& algo, const AlgoOutcome& outcome,
                           const Instance& instance) {
  nlohmann::json doc = {{"algorithm", algo},
                        {"status", StatusName(outcome.status)}};
  if (outcome.status == AlgoOutcome::Status::kOk) {
    SolveReport report;
    report.algorithm = algo;
    report.cost = outcome.cost;
    report.witness = outcome.witness;
    const nlohmann::json matching = SaveMatching(instance, report);
    doc["cost"] = matching["cost"];
    doc["pairs"] = matching["pairs"];
  }
  if (!outcome.message.empty()) doc["message"] = outcome.message;
  return doc;
}

}  // namespace

DemandShape ParseDemandShape(const std::string& name) {
  if (name == "uniform") return DemandShape::kUniform;
  if (name == "ones") return DemandShape::kOnes;
  if (name == "heavy") return DemandShape::kHeavy;
  throw std::invalid_argument("unknown demand shape '" + name + "'");
}

const char* DemandShapeName(DemandShape shape) {
  switch (shape) {
    case DemandShape::kUniform:
      return "uniform";
    case DemandShape::kOnes:
      return "ones";
    case DemandShape::kHeavy:
      return "heavy";
  }
  return "uniform";
}

Instance GenInstance(const GenSpec& spec) {
  if (spec.y < 1 || spec.z < 1) {
    throw std::invalid_argument("both point sets need at least one point");
  }
  if (spec.coord_range < 0) {
    throw std::invalid_argument("coordinate range must be non-negative");
  }
  if (spec.max_demand < 1) {
    throw std::invalid_argument("max demand must be at least 1");
  }
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<Coord> coord(0, spec.coord_range);
  std::vector<Coord> s(spec.y);
  std::vector<Coord> t(spec.z);
  std::vector<Demand> alpha(spec.y);
  std::vector<Demand> beta(spec.z);
  for (Coord& x : s) x = coord(rng);
  for (Coord& x : t) x = coord(rng);
  for (Demand& d : alpha) {
    d = DrawDemand(&rng, spec.max_demand, spec.shape);
    if (spec.guarantee_feasible) d = std::min<Demand>(d, spec.z);
  }
  for (Demand& d : beta) {
    d = DrawDemand(&rng, spec.max_demand, spec.shape);
    if (spec.guarantee_feasible) d = std::min<Demand>(d, spec.y);
  }
  return MakeInstance(s, alpha, t, beta);
}

const char* StatusName(AlgoOutcome::Status status) {
  switch (status) {
    case AlgoOutcome::Status::kOk:
      return "ok";
    case AlgoOutcome::Status::kInfeasible:
      return "infeasible";
    case AlgoOutcome::Status::kTooLarge:
      return "too_large";
    case AlgoOutcome::Status::kError:
      return "error";
  }
  return "error";
}

NamedSolver BuiltinSolver(const std::string& name, int enum_limit) {
  std::function<AlgoOutcome(const Instance&)> run;
  if (name == "ommd") {
    run = [](const Instance& instance) {
      try {
        return FromReport(OmmdSolve(instance));
      } catch (const InfeasibleError& error) {
        AlgoOutcome outcome;
        outcome.status = AlgoOutcome::Status::kInfeasible;
        outcome.message = error.what();
        return outcome;
      }
    };
  } else if (name == "mm") {
    run = [](const Instance& instance) { return FromReport(MmSolve(instance)); };
  } else if (name == "mcf") {
    run = [](const Instance& instance) { return FromOracle(OracleMcf(instance)); };
  } else if (name == "enum") {
    run = [enum_limit](const Instance& instance) {
      return FromOracle(OracleEnum(instance, enum_limit));
    };
  } else {
    throw std::invalid_argument("unknown algorithm '" + name + "'");
  }
  return {name, [run](const Instance& instance) {
            const auto start = std::chrono::steady_clock::now();
            AlgoOutcome outcome;
            try {
              outcome = run(instance);
            } catch (const std::exception& error) {
              outcome = AlgoOutcome{};
              outcome.status = AlgoOutcome::Status::kError;
              outcome.message = error.what();
            }
            outcome.millis = ElapsedMillis(start);
            return outcome;
          }};
}

nlohmann::json CompareReport::ToJson() const {
  nlohmann::json doc = {{"trials", trials},
                        {"agreed", agreed},
                        {"mismatches", first_mismatch ? 1 : 0}};
  if (first_mismatch) {
    const Mismatch& m = *first_mismatch;
    const Instance instance = LoadInstance(m.instance);
    nlohmann::json outcomes = nlohmann::json::array();
    for (std::size_t k = 0; k < m.algos.size(); ++k) {
      outcomes.push_back(OutcomeJson(m.algos[k], m.outcomes[k], instance));
    }
    doc["first_mismatch"] = {{"trial", m.trial},
                             {"seed", m.seed},
                             {"reason", m.reason},
                             {"instance", m.instance},
                             {"outcomes", outcomes}};
  }
  return doc;
}

Instance CompareInstance(const CompareSpec& spec, int trial, uint64_t* seed_out) {
  if (spec.max_n < 2) throw std::invalid_argument("max-n must be at least 2");
  const uint64_t seed = Mix(spec.seed ^ Mix(static_cast<uint64_t>(trial)));
  std::mt19937_64 rng(seed);
  const int n = std::uniform_int_distribution<int>(2, spec.max_n)(rng);
  int y = std::uniform_int_distribution<int>(1, n - 1)(rng);
  int z = n - y;
  while (spec.max_pairs > 0 && static_cast<int64_t>(y) * z > spec.max_pairs) {
    if (y > z) {
      --y;
    } else {
      --z;
    }
  }
  GenSpec gen;
  gen.seed = rng();
  gen.y = y;
  gen.z = z;
  gen.coord_range = spec.coord_range;
  gen.max_demand = spec.max_demand;
  gen.shape = spec.shape;
  if (seed_out != nullptr) *seed_out = gen.seed;
  return GenInstance(gen);
}

std::optional<std::string> Disagreement(const Instance& instance,
                                        const std::vector<NamedSolver>& solvers,
                                        std::vector<AlgoOutcome>* outcomes) {
  outcomes->clear();
  for (const NamedSolver& solver : solvers) {
    outcomes->push_back(solver.run(instance));
  }
  const Instance unit = UnitDemands(instance);
  int reference = -1;
  for (std::size_t k = 0; k < solvers.size(); ++k) {
    const AlgoOutcome& outcome = (*outcomes)[k];
    const std::string& name = solvers[k].name;
    if (outcome.status == AlgoOutcome::Status::kTooLarge) continue;
    if (outcome.status == AlgoOutcome::Status::kError) {
      return name + " failed: " + outcome.message;
    }
    if (outcome.status == AlgoOutcome::Status::kOk) {
      const Instance& checked = name == "mm" ? unit : instance;
      const Verification verification = VerifyMatching(checked, outcome.witness);
      if (!verification.ok) {
        return name + " witness is invalid: " +
               verification.violations.front().Describe(checked);
      }
      if (verification.cost != outcome.cost) {
        return name + " reports cost " + CostToString(outcome.cost) +
               " but its witness costs " + CostToString(verification.cost);
      }
    }
    if (reference < 0) {
      reference = static_cast<int>(k);
      continue;
    }
    const AlgoOutcome& base = (*outcomes)[reference];
    if (base.status != outcome.status) {
      return solvers[reference].name + " is " + StatusName(base.status) +
             " but " + name + " is " + StatusName(outcome.status);
    }
    if (outcome.status == AlgoOutcome::Status::kOk && base.cost != outcome.cost) {
      return solvers[reference].name + " cost " + CostToString(base.cost) +
             " differs from " + name + " cost " + CostToString(outcome.cost);
    }
  }
  return std::nullopt;
}

CompareReport Compare(const std::vector<NamedSolver>& solvers,
                      const CompareSpec& spec) {
  if (solvers.size() < 2) {
    throw std::invalid_argument("comparison needs at least two algorithms");
  }
  if (spec.trials < 0) throw std::invalid_argument("trials must be >= 0");
  CompareSpec effective = spec;
  for (const NamedSolver& solver : solvers) {
    if (solver.name == "mm") effective.shape = DemandShape::kOnes;
    if (solver.name == "enum" &&
        (effective.max_pairs == 0 || effective.max_pairs > kCompareEnumLimit)) {
      effective.max_pairs = kCompareEnumLimit;
    }
  }
  std::atomic<int> next{0};
  std::atomic<int> first_bad{INT_MAX};
  std::mutex mutex;
  std::optional<Mismatch> mismatch;
  auto worker = [&]() {
    std::vector<AlgoOutcome> outcomes;
    while (true) {
      const int trial = next.fetch_add(1);
      if (trial >= effective.trials || trial > first_bad.load()) return;
      uint64_t seed = 0;
      const Instance instance = CompareInstance(effective, trial, &seed);
      const std::optional<std::string> reason =
          Disagreement(instance, solvers, &outcomes);
      if (!reason) continue;
      const std::lock_guard<std::mutex> lock(mutex);
      if (trial < first_bad.load()) {
        first_bad.store(trial);
        Mismatch found;
        found.trial = trial;
        found.seed = seed;
        found.instance = SaveInstance(instance);
        for (const NamedSolver& solver : solvers) found.algos.push_back(solver.name);
        found.outcomes = outcomes;
        found.reason = *reason;
        mismatch = std::move(found);
      }
    }
  };
  const int jobs = std::max(1, spec.jobs);
  std::vector<std::thread> threads;
  for (int k = 1; k < jobs; ++k) threads.emplace_back(worker);
  worker();
  for (std::thread& thread : threads) thread.join();
  CompareReport report;
  report.trials = mismatch ? mismatch->trial + 1 : effective.trials;
  report.agreed = report.trials - (mismatch ? 1 : 0);
  report.first_mismatch = std::move(mismatch);
  return report;
}

std::optional<std::string> Replay(const nlohmann::json& mismatch_instance,
                                  const std::vector<NamedSolver>& solvers) {
  std::vector<AlgoOutcome> outcomes;
  return Disagreement(LoadInstance(mismatch_instance), solvers, &outcomes);
}

DemandScale ParseDemandScale(const std::string& name) {
  if (name == "linear") return DemandScale::kLinear;
  if (name == "const") return DemandScale::kConst;
  throw std::invalid_argument("unknown demand scale '" + name + "'");
}

Instance BenchInstance(const BenchSpec& spec, int n) {
  if (n < 2) throw std::invalid_argument("bench sizes must be at least 2");
  GenSpec gen;
  gen.seed = Mix(spec.seed ^ Mix(static_cast<uint64_t>(n)));
  gen.y = n / 2;
  gen.z = n - gen.y;
  gen.coord_range = static_cast<Coord>(spec.coord_factor) * n;
  if (spec.scale == DemandScale::kLinear) {
    gen.max_demand = std::max(1, n / std::max(1, spec.linear_divisor));
    gen.shape = DemandShape::kUniform;
  } else {
    gen.max_demand = spec.const_demand;
    gen.shape = spec.const_demand == 1 ? DemandShape::kOnes : DemandShape::kUniform;
  }
  return GenInstance(gen);
}

BenchResult BenchRun(const NamedSolver& solver, const BenchSpec& spec) {
  if (spec.sizes.empty()) throw std::invalid_argument("no bench sizes");
  if (!std::is_sorted(spec.sizes.begin(), spec.sizes.end())) {
    throw std::invalid_argument("bench sizes must be ascending");
  }
  BenchResult result;
  std::vector<double> ns;
  std::vector<double> times;
  std::vector<double> steps;
  for (int n : spec.sizes) {
    const Instance instance = BenchInstance(spec, n);
    std::vector<double> millis;
    std::vector<int64_t> counts;
    AlgoOutcome outcome;
    for (int r = 0; r < std::max(1, spec.repeats); ++r) {
      outcome = solver.run(instance);
      if (outcome.status != AlgoOutcome::Status::kOk) {
        throw std::runtime_error(solver.name + " failed at n = " +
                                 std::to_string(n) + ": " + outcome.message);
      }
      millis.push_back(outcome.millis);
      counts.push_back(outcome.steps);
    }
    BenchRecord record;
    record.n = n;
    record.algo = solver.name;
    record.seed = spec.seed;
    record.steps = Median(counts);
    record.millis = Median(millis);
    record.cost = outcome.cost;
    result.records.push_back(record);
    ns.push_back(n);
    times.push_back(std::max(record.millis, 1e-6));
    steps.push_back(static_cast<double>(std::max<int64_t>(record.steps, 1)));
  }
  if (ns.size() >= 2) {
    result.time_slope = LogLogSlope(ns, times);
    result.step_slope = LogLogSlope(ns, steps);
  }
  return result;
}

double LogLogSlope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope needs two or more matching points");
  }
  const double k = static_cast<double>(x.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += std::log(x[i]);
    mean_y += std::log(y[i]);
  }
  mean_x /= k;
  mean_y /= k;
  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mean_x;
    numerator += dx * (std::log(y[i]) - mean_y);
    denominator += dx * dx;
  }
  if (denominator == 0.0) throw std::invalid_argument("all x values are equal");
  return numerator / denominator;
}

std::string BenchCsv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << "n,algo,seed,steps,millis,cost\n";
  for (const BenchRecord& record : records) {
    out << record.n << ',' << record.algo << ',' << record.seed << ','
        << record.steps << ',' << record.millis << ','
        << CostToString(record.cost) << '\n';
  }
  return out.str();
}

}  // namespace linematch
