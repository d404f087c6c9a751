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

#include "linematch/cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "linematch/core.h"
#include "linematch/harness.h"
#include "linematch/mm_solver.h"
#include "linematch/ommd_solver.h"
#include "linematch/oracle.h"

namespace linematch {
namespace {

class CliFailure : public std::runtime_error {
 public:
  CliFailure(int code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

std::string ReadText(const std::string& name, std::istream& in) {
  if (name == "-") {
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  std::ifstream file(name, std::ios::binary);
  if (!file) throw CliFailure(kExitUsage, "cannot read '" + name + "'");
  return std::string(std::istreambuf_iterator<char>(file), {});
}

void WriteText(const std::string& name, const std::string& text,
               std::ostream& out) {
  if (name == "-") {
    out << text;
    return;
  }
  std::ofstream file(name, std::ios::binary);
  if (!file) throw CliFailure(kExitUsage, "cannot write '" + name + "'");
  file << text;
}

Instance ReadInstance(const std::string& name, std::istream& in) {
  try {
    return LoadInstanceText(ReadText(name, in));
  } catch (const InstanceError& error) {
    throw CliFailure(kExitUsage, std::string("invalid instance: ") + error.what());
  }
}

nlohmann::json ReadJson(const std::string& name, std::istream& in) {
  nlohmann::json doc = nlohmann::json::parse(ReadText(name, in), nullptr,
                                             /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    throw CliFailure(kExitUsage, "'" + name + "' is not valid JSON");
  }
  return doc;
}

SolveReport FromOracle(const OracleResult& result, const std::string& algo) {
  switch (result.status) {
    case OracleStatus::kInfeasible:
      throw CliFailure(kExitInfeasible, "infeasible: " + result.message);
    case OracleStatus::kTooLarge:
      throw CliFailure(kExitUsage, result.message);
    case OracleStatus::kOk:
      break;
  }
  SolveReport report;
  report.algorithm = algo;
  report.cost = result.cost;
  report.witness = result.witness;
  report.steps = result.steps;
  return report;
}

struct SolveArgs {
  std::string algo;
  std::string input;
  std::string output = "-";
  int enum_limit = kDefaultEnumLimit;
};

int RunSolve(const SolveArgs& args, std::istream& in, std::ostream& out,
             std::ostream& err) {
  const Instance instance = ReadInstance(args.input, in);
  SolveReport report;
  if (args.algo == "ommd") {
    try {
      report = OmmdSolve(instance);
    } catch (const InfeasibleError& error) {
      throw CliFailure(kExitInfeasible, std::string("infeasible: ") + error.what());
    }
  } else if (args.algo == "mm") {
    if (instance.max_demand() > 1) err << "note: mm treats every demand as 1\n";
    report = MmSolve(instance);
  } else if (args.algo == "mcf") {
    report = FromOracle(OracleMcf(instance), "mcf");
  } else {
    report = FromOracle(OracleEnum(instance, args.enum_limit), "enum");
  }
  WriteText(args.output, SaveMatching(instance, report).dump() + "\n", out);
  return kExitOk;
}

struct VerifyArgs {
  std::string input;
  std::string matching;
};

int RunVerify(const VerifyArgs& args, std::istream& in, std::ostream& out) {
  if (args.input == "-" && args.matching == "-") {
    throw CliFailure(kExitUsage, "only one of --input and --matching can be '-'");
  }
  const Instance instance = ReadInstance(args.input, in);
  const nlohmann::json doc = ReadJson(args.matching, in);
  Matching matching;
  try {
    matching = LoadMatching(instance, doc);
  } catch (const InstanceError& error) {
    throw CliFailure(kExitUsage, std::string("invalid matching: ") + error.what());
  }
  const Verification verification = VerifyMatching(instance, matching);
  nlohmann::json violations = nlohmann::json::array();
  for (const Violation& violation : verification.violations) {
    violations.push_back(violation.Describe(instance));
  }
  bool ok = verification.ok;
  if (doc.contains("cost")) {
    Cost reported = 0;
    try {
      reported = CostFromJson(doc["cost"]);
    } catch (const InstanceError& error) {
      throw CliFailure(kExitUsage, std::string("invalid matching: ") + error.what());
    }
    if (reported != verification.cost) {
      ok = false;
      violations.push_back("reported cost " + CostToString(reported) +
                           " differs from recomputed cost " +
                           CostToString(verification.cost));
    }
  }
  const nlohmann::json report = {{"ok", ok},
                                 {"cost", CostToJson(verification.cost)},
                                 {"violations", violations}};
  out << report.dump() << "\n";
  return ok ? kExitOk : kExitMismatch;
}

struct GenArgs {
  int ns = 0;
  int nt = 0;
  Demand max_demand = 1;
  Coord coord_range = 100;
  uint64_t seed = 0;
  std::string shape = "uniform";
  std::string out = "-";
  bool allow_infeasible = false;
};

int RunGen(const GenArgs& args, std::ostream& out) {
  GenSpec spec;
  spec.seed = args.seed;
  spec.y = args.ns;
  spec.z = args.nt;
  spec.max_demand = args.max_demand;
  spec.coord_range = args.coord_range;
  spec.guarantee_feasible = !args.allow_infeasible;
  try {
    spec.shape = ParseDemandShape(args.shape);
    WriteText(args.out, SaveInstance(GenInstance(spec)).dump() + "\n", out);
  } catch (const std::invalid_argument& error) {
    throw CliFailure(kExitUsage, error.what());
  }
  return kExitOk;
}

std::vector<NamedSolver> Solvers(const std::vector<std::string>& names) {
  std::vector<NamedSolver> solvers;
  try {
    for (const std::string& name : names) solvers.push_back(BuiltinSolver(name));
  } catch (const std::invalid_argument& error) {
    throw CliFailure(kExitUsage, error.what());
  }
  return solvers;
}

struct CompareArgs {
  std::vector<std::string> algos;
  int trials = 0;
  uint64_t seed = 0;
  int max_n = 0;
  Demand max_demand = 1;
  Coord coord_range = 100;
  std::string shape = "uniform";
  int jobs = 1;
};

int RunCompare(const CompareArgs& args, std::ostream& out) {
  const std::vector<NamedSolver> solvers = Solvers(args.algos);
  CompareSpec spec;
  spec.trials = args.trials;
  spec.seed = args.seed;
  spec.max_n = args.max_n;
  spec.max_demand = args.max_demand;
  spec.coord_range = args.coord_range;
  spec.jobs = args.jobs;
  CompareReport report;
  try {
    spec.shape = ParseDemandShape(args.shape);
    report = Compare(solvers, spec);
  } catch (const std::invalid_argument& error) {
    throw CliFailure(kExitUsage, error.what());
  }
  out << report.ToJson().dump() << "\n";
  return report.first_mismatch ? kExitMismatch : kExitOk;
}

struct BenchArgs {
  std::string algo;
  std::vector<int> sizes;
  uint64_t seed = 0;
  std::string csv;
  std::string demand_scale = "linear";
  int repeats = 3;
  int divisor = 256;
};

int RunBench(const BenchArgs& args, std::ostream& out) {
  const std::vector<NamedSolver> solvers = Solvers({args.algo});
  BenchSpec spec;
  spec.sizes = args.sizes;
  spec.seed = args.seed;
  spec.repeats = args.repeats;
  spec.linear_divisor = args.divisor;
  BenchResult result;
  try {
    spec.scale = ParseDemandScale(args.demand_scale);
    result = BenchRun(solvers.front(), spec);
  } catch (const std::invalid_argument& error) {
    throw CliFailure(kExitUsage, error.what());
  } catch (const std::runtime_error& error) {
    throw CliFailure(kExitMismatch, error.what());
  }
  WriteText(args.csv, BenchCsv(result.records), out);
  const nlohmann::json summary = {{"algo", args.algo},
                                  {"demand_scale", args.demand_scale},
                                  {"sizes", args.sizes},
                                  {"step_slope", result.step_slope},
                                  {"time_slope", result.time_slope}};
  if (args.csv != "-") out << summary.dump() << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-cost many-to-many matching with demands on a line",
               "linematch"};
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("--algo", solve.algo, "Algorithm")
      ->required()
      ->check(CLI::IsMember({"ommd", "mm", "mcf", "enum"}));
  solve_cmd->add_option("--input", solve.input, "Instance file or -")->required();
  solve_cmd->add_option("--output", solve.output, "Matching file or -");
  solve_cmd->add_option("--enum-limit", solve.enum_limit,
                        "Largest pair count for enum")
      ->check(CLI::PositiveNumber);

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check a matching");
  verify_cmd->add_option("--input", verify.input, "Instance file or -")->required();
  verify_cmd->add_option("--matching", verify.matching, "Matching file or -")
      ->required();

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a seeded instance");
  gen_cmd->add_option("--ns", gen.ns, "Number of S points")->required();
  gen_cmd->add_option("--nt", gen.nt, "Number of T points")->required();
  gen_cmd->add_option("--max-demand", gen.max_demand, "Largest demand")->required();
  gen_cmd->add_option("--coord-range", gen.coord_range, "Coordinates in [0, R]")
      ->required();
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->required();
  gen_cmd->add_option("--shape", gen.shape, "uniform, ones or heavy");
  gen_cmd->add_option("--out", gen.out, "Instance file or -");
  gen_cmd->add_flag("--allow-infeasible", gen.allow_infeasible,
                    "Do not clamp demands to the opposite set size");

  CompareArgs compare;
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "Differential test of algorithms");
  compare_cmd->add_option("--algos", compare.algos, "Comma-separated algorithms")
      ->required()
      ->delimiter(',');
  compare_cmd->add_option("--trials", compare.trials, "Number of instances")
      ->required()
      ->check(CLI::NonNegativeNumber);
  compare_cmd->add_option("--seed", compare.seed, "Random seed")->required();
  compare_cmd->add_option("--max-n", compare.max_n, "Largest instance size")
      ->required();
  compare_cmd->add_option("--max-demand", compare.max_demand, "Largest demand");
  compare_cmd->add_option("--coord-range", compare.coord_range,
                          "Coordinates in [0, R]");
  compare_cmd->add_option("--shape", compare.shape, "uniform, ones or heavy");
  compare_cmd->add_option("--jobs", compare.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Scaling benchmark");
  bench_cmd->add_option("--algo", bench.algo, "Algorithm")
      ->required()
      ->check(CLI::IsMember({"ommd", "mm", "mcf", "enum"}));
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated sizes")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--seed", bench.seed, "Random seed")->required();
  bench_cmd->add_option("--csv", bench.csv, "CSV file or -")->required();
  bench_cmd->add_option("--demand-scale", bench.demand_scale, "linear or const")
      ->check(CLI::IsMember({"linear", "const"}));
  bench_cmd->add_option("--repeats", bench.repeats, "Runs per size")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--divisor", bench.divisor,
                        "Largest demand is n / divisor on the linear scale")
      ->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return RunSolve(solve, in, out, err);
    if (verify_cmd->parsed()) return RunVerify(verify, in, out);
    if (gen_cmd->parsed()) return RunGen(gen, out);
    if (compare_cmd->parsed()) return RunCompare(compare, out);
    return RunBench(bench, out);
  } catch (const CliFailure& failure) {
    err << "linematch: " << failure.what() << "\n";
    return failure.code();
  } catch (const std::exception& error) {
    err << "linematch: internal error: " << error.what() << "\n";
    return kExitMismatch;
  }
}

}  // namespace linematch
