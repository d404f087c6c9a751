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

// Domain model for many-to-many matching with demands on a line: the
// instance, matchings, exact cost arithmetic, feasibility and verification.

#ifndef LINEMATCH_CORE_H_
#define LINEMATCH_CORE_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace linematch {

using Coord = int64_t;
using Demand = int64_t;
// Exact cost type; sums of up to 2^62 distances between 64-bit coordinates
// fit without overflow.
using Cost = __int128;

enum class Side : uint8_t { kS = 0, kT = 1 };

inline Side Other(Side side) { return side == Side::kS ? Side::kT : Side::kS; }
const char* SideName(Side side);

// Two point sets on a line with per-point demands. Each side is stored sorted
// by (coordinate, load order); `*_original[i]` is the load index of the i-th
// sorted point. All solver-facing indices are sorted indices.
struct Instance {
  std::vector<Coord> s_coords;
  std::vector<Coord> t_coords;
  std::vector<Demand> s_demands;
  std::vector<Demand> t_demands;
  std::vector<int> s_original;
  std::vector<int> t_original;

  int y() const { return static_cast<int>(s_coords.size()); }
  int z() const { return static_cast<int>(t_coords.size()); }
  int n() const { return y() + z(); }
  int size(Side side) const { return side == Side::kS ? y() : z(); }
  Coord coord(Side side, int i) const {
    return side == Side::kS ? s_coords[i] : t_coords[i];
  }
  Demand demand(Side side, int i) const {
    return side == Side::kS ? s_demands[i] : t_demands[i];
  }
  // Largest demand over both sides (m' in the demand-round vocabulary).
  Demand max_demand() const;
  // Sum of all demands of one side.
  Cost total_demand(Side side) const;
};

enum class InstanceErrorCode {
  kMalformed,
  kEmptySide,
  kNonPositiveDemand,
  kOutOfRange,
};

class InstanceError : public std::runtime_error {
 public:
  InstanceError(InstanceErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  InstanceErrorCode code() const { return code_; }

 private:
  InstanceErrorCode code_;
};

// Raised by solvers on instances that fail CheckFeasible.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Builds an instance from coordinates and demands given in load order.
// Throws InstanceError on empty sides or non-positive demands.
Instance MakeInstance(const std::vector<Coord>& s_coords,
                      const std::vector<Demand>& s_demands,
                      const std::vector<Coord>& t_coords,
                      const std::vector<Demand>& t_demands);

// Parses {"s":[{"x":..,"demand":..},...],"t":[...]}. Throws InstanceError.
Instance LoadInstance(const nlohmann::json& doc);
Instance LoadInstanceText(const std::string& text);
// Serializes in load order, so that LoadInstance(SaveInstance(x)) == x.
nlohmann::json SaveInstance(const Instance& instance);

bool operator==(const Instance& a, const Instance& b);

// A pair of sorted indices (s index, t index).
struct Pair {
  int s = 0;
  int t = 0;
  friend bool operator==(const Pair&, const Pair&) = default;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

struct Matching {
  std::vector<Pair> pairs;

  // Sorts pairs lexicographically; duplicates are kept so that verification
  // can still report them.
  void Canonicalize();
  std::vector<int64_t> Degrees(const Instance& instance, Side side) const;
};

struct Feasibility {
  bool ok = true;
  Side side = Side::kS;
  int index = -1;  // sorted index of the violating point, -1 when ok
  std::string reason;
};

// Ok iff |T| >= max alpha and |S| >= max beta.
Feasibility CheckFeasible(const Instance& instance);

struct Violation {
  enum class Kind { kUnmetDemand, kDuplicatePair, kIndexOutOfRange };
  Kind kind = Kind::kUnmetDemand;
  Side side = Side::kS;
  int index = -1;
  int64_t degree = 0;
  Demand demand = 0;
  Pair pair;
  std::string Describe(const Instance& instance) const;
};

struct Verification {
  bool ok = true;
  std::vector<Violation> violations;
  Cost cost = 0;
};

// Checks index ranges, pair distinctness and deg(p) >= demand(p) for every
// point; also recomputes the total cost of the in-range pairs.
Verification VerifyMatching(const Instance& instance, const Matching& matching);

// Sum of |s - t| over the pairs, computed exactly.
Cost CostOf(const Instance& instance, const Matching& matching);

// Distance between s_i and t_j.
inline Cost PairCost(const Instance& instance, int s, int t) {
  Cost d = static_cast<Cost>(instance.s_coords[s]) -
           static_cast<Cost>(instance.t_coords[t]);
  return d < 0 ? -d : d;
}

std::string CostToString(Cost cost);
// JSON number when the value fits in 64 bits, decimal string otherwise.
nlohmann::json CostToJson(Cost cost);
// Accepts both encodings produced by CostToJson.
Cost CostFromJson(const nlohmann::json& value);

// Instrumentation shared by every solver.
struct SolveReport {
  std::string algorithm;
  Cost cost = 0;
  Matching witness;
  double millis = 0.0;
  int n = 0;
  int64_t steps = 0;
};

// {"algorithm":..,"cost":..,"pairs":[[s_load,t_load],...]}; pairs refer to
// load order and are sorted.
nlohmann::json SaveMatching(const Instance& instance, const SolveReport& report);
// Reads a matching document and maps load indices back to sorted indices.
// Out-of-range indices are kept unchanged so that verification reports them.
Matching LoadMatching(const Instance& instance, const nlohmann::json& doc);

}  // namespace linematch

#endif  // LINEMATCH_CORE_H_
