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

#include "linematch/core.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace linematch {
namespace {

using nlohmann::json;

void SortSide(std::vector<Coord>* coords, std::vector<Demand>* demands,
              std::vector<int>* original) {
  const int count = static_cast<int>(coords->size());
  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return (*coords)[a] < (*coords)[b];
  });
  std::vector<Coord> sorted_coords(count);
  std::vector<Demand> sorted_demands(count);
  for (int i = 0; i < count; ++i) {
    sorted_coords[i] = (*coords)[order[i]];
    sorted_demands[i] = (*demands)[order[i]];
  }
  *coords = std::move(sorted_coords);
  *demands = std::move(sorted_demands);
  *original = std::move(order);
}

int64_t ReadInteger(const json& value, const std::string& where) {
  if (value.is_number_integer()) {
    if (value.is_number_unsigned()) {
      const uint64_t raw = value.get<uint64_t>();
      if (raw > static_cast<uint64_t>(std::numeric_limits<int64_t>::max())) {
        throw InstanceError(InstanceErrorCode::kOutOfRange,
                            where + " exceeds the signed 64-bit range");
      }
      return static_cast<int64_t>(raw);
    }
    return value.get<int64_t>();
  }
  if (value.is_number_float()) {
    const double raw = value.get<double>();
    if (std::isfinite(raw) && raw == std::floor(raw) &&
        std::fabs(raw) >= 9.2e18) {
      throw InstanceError(InstanceErrorCode::kOutOfRange,
                          where + " is not representable as a 64-bit integer");
    }
  }
  throw InstanceError(InstanceErrorCode::kMalformed,
                      where + " must be an integer");
}

void ReadSide(const json& doc, const char* key, std::vector<Coord>* coords,
              std::vector<Demand>* demands) {
  auto it = doc.find(key);
  if (it == doc.end() || !it->is_array()) {
    throw InstanceError(InstanceErrorCode::kMalformed,
                        std::string("missing array \"") + key + "\"");
  }
  int index = 0;
  for (const json& point : *it) {
    const std::string where =
        std::string(key) + "[" + std::to_string(index) + "]";
    if (!point.is_object()) {
      throw InstanceError(InstanceErrorCode::kMalformed,
                          where + " must be an object");
    }
    for (auto field = point.begin(); field != point.end(); ++field) {
      if (field.key() != "x" && field.key() != "demand") {
        throw InstanceError(InstanceErrorCode::kMalformed,
                            where + " has unknown field \"" + field.key() +
                                "\"");
      }
    }
    if (!point.contains("x") || !point.contains("demand")) {
      throw InstanceError(InstanceErrorCode::kMalformed,
                          where + " needs fields \"x\" and \"demand\"");
    }
    coords->push_back(ReadInteger(point["x"], where + ".x"));
    demands->push_back(ReadInteger(point["demand"], where + ".demand"));
    ++index;
  }
}

}  // namespace

const char* SideName(Side side) { return side == Side::kS ? "s" : "t"; }

Demand Instance::max_demand() const {
  Demand best = 0;
  for (Demand d : s_demands) best = std::max(best, d);
  for (Demand d : t_demands) best = std::max(best, d);
  return best;
}

Cost Instance::total_demand(Side side) const {
  Cost total = 0;
  for (Demand d : side == Side::kS ? s_demands : t_demands) total += d;
  return total;
}

Instance MakeInstance(const std::vector<Coord>& s_coords,
                      const std::vector<Demand>& s_demands,
                      const std::vector<Coord>& t_coords,
                      const std::vector<Demand>& t_demands) {
  if (s_coords.size() != s_demands.size() ||
      t_coords.size() != t_demands.size()) {
    throw InstanceError(InstanceErrorCode::kMalformed,
                        "coordinate and demand lists differ in length");
  }
  if (s_coords.empty() || t_coords.empty()) {
    throw InstanceError(InstanceErrorCode::kEmptySide,
                        s_coords.empty() ? "set s is empty" : "set t is empty");
  }
  for (size_t i = 0; i < s_demands.size(); ++i) {
    if (s_demands[i] < 1) {
      throw InstanceError(InstanceErrorCode::kNonPositiveDemand,
                          "s[" + std::to_string(i) + "] has demand " +
                              std::to_string(s_demands[i]) + " < 1");
    }
  }
  for (size_t j = 0; j < t_demands.size(); ++j) {
    if (t_demands[j] < 1) {
      throw InstanceError(InstanceErrorCode::kNonPositiveDemand,
                          "t[" + std::to_string(j) + "] has demand " +
                              std::to_string(t_demands[j]) + " < 1");
    }
  }
  Instance instance;
  instance.s_coords = s_coords;
  instance.s_demands = s_demands;
  instance.t_coords = t_coords;
  instance.t_demands = t_demands;
  SortSide(&instance.s_coords, &instance.s_demands, &instance.s_original);
  SortSide(&instance.t_coords, &instance.t_demands, &instance.t_original);
  return instance;
}

Instance LoadInstance(const json& doc) {
  if (!doc.is_object()) {
    throw InstanceError(InstanceErrorCode::kMalformed,
                        "instance document must be an object");
  }
  for (auto field = doc.begin(); field != doc.end(); ++field) {
    if (field.key() != "s" && field.key() != "t") {
      throw InstanceError(InstanceErrorCode::kMalformed,
                          "unknown top-level field \"" + field.key() + "\"");
    }
  }
  std::vector<Coord> s_coords, t_coords;
  std::vector<Demand> s_demands, t_demands;
  ReadSide(doc, "s", &s_coords, &s_demands);
  ReadSide(doc, "t", &t_coords, &t_demands);
  return MakeInstance(s_coords, s_demands, t_coords, t_demands);
}

Instance LoadInstanceText(const std::string& text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    throw InstanceError(InstanceErrorCode::kMalformed, "invalid JSON");
  }
  return LoadInstance(doc);
}

json SaveInstance(const Instance& instance) {
  auto side_to_json = [](const std::vector<Coord>& coords,
                         const std::vector<Demand>& demands,
                         const std::vector<int>& original) {
    std::vector<json> points(coords.size());
    for (size_t i = 0; i < coords.size(); ++i) {
      points[original[i]] = json{{"x", coords[i]}, {"demand", demands[i]}};
    }
    return json(points);
  };
  return json{{"s", side_to_json(instance.s_coords, instance.s_demands,
                                 instance.s_original)},
              {"t", side_to_json(instance.t_coords, instance.t_demands,
                                 instance.t_original)}};
}

bool operator==(const Instance& a, const Instance& b) {
  return a.s_coords == b.s_coords && a.t_coords == b.t_coords &&
         a.s_demands == b.s_demands && a.t_demands == b.t_demands &&
         a.s_original == b.s_original && a.t_original == b.t_original;
}

void Matching::Canonicalize() { std::sort(pairs.begin(), pairs.end()); }

std::vector<int64_t> Matching::Degrees(const Instance& instance,
                                       Side side) const {
  std::vector<int64_t> degree(instance.size(side), 0);
  for (const Pair& pair : pairs) {
    const int index = side == Side::kS ? pair.s : pair.t;
    if (index >= 0 && index < instance.size(side)) ++degree[index];
  }
  return degree;
}

Feasibility CheckFeasible(const Instance& instance) {
  Feasibility result;
  for (Side side : {Side::kS, Side::kT}) {
    const int partners = instance.size(Other(side));
    for (int i = 0; i < instance.size(side); ++i) {
      if (instance.demand(side, i) > partners) {
        result.ok = false;
        result.side = side;
        result.index = i;
        const int load = side == Side::kS ? instance.s_original[i]
                                          : instance.t_original[i];
        std::ostringstream out;
        out << SideName(side) << "[" << load << "] at x=" << instance.coord(side, i)
            << " needs " << instance.demand(side, i)
            << " distinct partners but |" << SideName(Other(side))
            << "|=" << partners;
        result.reason = out.str();
        return result;
      }
    }
  }
  return result;
}

std::string Violation::Describe(const Instance& instance) const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kIndexOutOfRange:
      out << "pair (" << pair.s << "," << pair.t << ") is out of range";
      break;
    case Kind::kDuplicatePair:
      out << "pair (" << instance.s_original[pair.s] << ","
          << instance.t_original[pair.t] << ") appears more than once";
      break;
    case Kind::kUnmetDemand: {
      const int load = side == Side::kS ? instance.s_original[index]
                                        : instance.t_original[index];
      out << SideName(side) << "[" << load << "] has degree " << degree
          << " < demand " << demand;
      break;
    }
  }
  return out.str();
}

Verification VerifyMatching(const Instance& instance,
                            const Matching& matching) {
  Verification result;
  std::vector<Pair> valid;
  valid.reserve(matching.pairs.size());
  for (const Pair& pair : matching.pairs) {
    if (pair.s < 0 || pair.s >= instance.y() || pair.t < 0 ||
        pair.t >= instance.z()) {
      Violation violation;
      violation.kind = Violation::Kind::kIndexOutOfRange;
      violation.pair = pair;
      result.violations.push_back(violation);
    } else {
      valid.push_back(pair);
    }
  }
  std::sort(valid.begin(), valid.end());
  Matching distinct;
  for (size_t k = 0; k < valid.size(); ++k) {
    if (k > 0 && valid[k] == valid[k - 1]) {
      if (k == 1 || valid[k - 1] != valid[k - 2]) {
        Violation violation;
        violation.kind = Violation::Kind::kDuplicatePair;
        violation.pair = valid[k];
        result.violations.push_back(violation);
      }
      continue;
    }
    distinct.pairs.push_back(valid[k]);
  }
  for (Side side : {Side::kS, Side::kT}) {
    const std::vector<int64_t> degree = distinct.Degrees(instance, side);
    for (int i = 0; i < instance.size(side); ++i) {
      if (degree[i] < instance.demand(side, i)) {
        Violation violation;
        violation.kind = Violation::Kind::kUnmetDemand;
        violation.side = side;
        violation.index = i;
        violation.degree = degree[i];
        violation.demand = instance.demand(side, i);
        result.violations.push_back(violation);
      }
    }
  }
  result.cost = CostOf(instance, Matching{valid});
  result.ok = result.violations.empty();
  return result;
}

Cost CostOf(const Instance& instance, const Matching& matching) {
  Cost total = 0;
  for (const Pair& pair : matching.pairs) {
    total += PairCost(instance, pair.s, pair.t);
  }
  return total;
}

std::string CostToString(Cost cost) {
  if (cost == 0) return "0";
  const bool negative = cost < 0;
  unsigned __int128 magnitude =
      negative ? -static_cast<unsigned __int128>(cost)
               : static_cast<unsigned __int128>(cost);
  std::string digits;
  while (magnitude > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(magnitude % 10)));
    magnitude /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

json CostToJson(Cost cost) {
  if (cost >= std::numeric_limits<int64_t>::min() &&
      cost <= std::numeric_limits<int64_t>::max()) {
    return json(static_cast<int64_t>(cost));
  }
  return json(CostToString(cost));
}

Cost CostFromJson(const json& value) {
  if (value.is_number_unsigned()) return static_cast<Cost>(value.get<uint64_t>());
  if (value.is_number_integer()) return static_cast<Cost>(value.get<int64_t>());
  if (value.is_string()) {
    const std::string text = value.get<std::string>();
    if (text.empty()) {
      throw InstanceError(InstanceErrorCode::kMalformed, "empty cost string");
    }
    Cost result = 0;
    size_t k = text[0] == '-' ? 1 : 0;
    if (k == text.size()) {
      throw InstanceError(InstanceErrorCode::kMalformed, "bad cost string");
    }
    for (; k < text.size(); ++k) {
      if (text[k] < '0' || text[k] > '9') {
        throw InstanceError(InstanceErrorCode::kMalformed, "bad cost string");
      }
      result = result * 10 + (text[k] - '0');
    }
    return text[0] == '-' ? -result : result;
  }
  throw InstanceError(InstanceErrorCode::kMalformed, "cost must be an integer");
}

json SaveMatching(const Instance& instance, const SolveReport& report) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(report.witness.pairs.size());
  for (const Pair& pair : report.witness.pairs) {
    pairs.emplace_back(instance.s_original[pair.s],
                       instance.t_original[pair.t]);
  }
  std::sort(pairs.begin(), pairs.end());
  json list = json::array();
  for (const auto& [s, t] : pairs) list.push_back(json::array({s, t}));
  return json{{"algorithm", report.algorithm},
              {"cost", CostToJson(report.cost)},
              {"pairs", list}};
}

Matching LoadMatching(const Instance& instance, const json& doc) {
  if (!doc.is_object() || !doc.contains("pairs") || !doc["pairs"].is_array()) {
    throw InstanceError(InstanceErrorCode::kMalformed,
                        "matching document needs a \"pairs\" array");
  }
  std::vector<int> s_sorted(instance.y()), t_sorted(instance.z());
  for (int i = 0; i < instance.y(); ++i) s_sorted[instance.s_original[i]] = i;
  for (int j = 0; j < instance.z(); ++j) t_sorted[instance.t_original[j]] = j;
  Matching matching;
  for (const json& entry : doc["pairs"]) {
    if (!entry.is_array() || entry.size() != 2 ||
        !entry[0].is_number_integer() || !entry[1].is_number_integer()) {
      throw InstanceError(InstanceErrorCode::kMalformed,
                          "each pair must be [s_index, t_index]");
    }
    const int64_t s = entry[0].get<int64_t>();
    const int64_t t = entry[1].get<int64_t>();
    Pair pair;
    pair.s = (s >= 0 && s < instance.y()) ? s_sorted[s]
                                          : static_cast<int>(std::clamp<int64_t>(
                                                s, -1, instance.y()));
    pair.t = (t >= 0 && t < instance.z()) ? t_sorted[t]
                                          : static_cast<int>(std::clamp<int64_t>(
                                                t, -1, instance.z()));
    matching.pairs.push_back(pair);
  }
  return matching;
}

}  // namespace linematch
