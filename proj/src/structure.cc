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

#include "linematch/structure.h"

#include <algorithm>
#include <sstream>

namespace linematch {
namespace {

constexpr std::size_t kMaxExamples = 5;

class Adjacency {
 public:
  Adjacency(const Instance& instance, const Matching& matching)
      : partners_{std::vector<std::vector<int>>(instance.y()),
                  std::vector<std::vector<int>>(instance.z())} {
    for (const Pair& pair : matching.pairs) {
      partners_[0][pair.s].push_back(pair.t);
      partners_[1][pair.t].push_back(pair.s);
    }
    for (auto& side : partners_) {
      for (auto& list : side) std::sort(list.begin(), list.end());
    }
  }

  bool Has(int s, int t) const {
    const std::vector<int>& list = partners_[0][s];
    return std::binary_search(list.begin(), list.end(), t);
  }
  bool Has(PointRef p, PointRef q) const {
    return p.side == Side::kS ? Has(p.index, q.index) : Has(q.index, p.index);
  }
  const std::vector<int>& partners(PointRef p) const {
    return partners_[p.side == Side::kS ? 0 : 1][p.index];
  }

 private:
  std::vector<std::vector<int>> partners_[2];
};

Coord X(const Instance& instance, PointRef p) {
  return instance.coord(p.side, p.index);
}

std::string Name(const Instance& instance, PointRef p) {
  std::ostringstream out;
  out << SideName(p.side) << "[" << p.index << "]@" << X(instance, p);
  return out.str();
}

Pair PairOf(PointRef p, PointRef q) {
  return p.side == Side::kS ? Pair{p.index, q.index} : Pair{q.index, p.index};
}

void Record(StructureReport* report, StructureViolation violation) {
  ++report->count;
  if (report->examples.size() < kMaxExamples) {
    report->examples.push_back(std::move(violation));
  }
}

const std::vector<Coord>& Coords(const Instance& instance, Side side) {
  return side == Side::kS ? instance.s_coords : instance.t_coords;
}

}  // namespace

StructureReport CheckSkipEdgeClosure(const Instance& instance,
                                     const Matching& matching) {
  const Adjacency adjacency(instance, matching);
  StructureReport report;
  for (const Pair& pair : matching.pairs) {
    PointRef a{Side::kS, pair.s};
    PointRef d{Side::kT, pair.t};
    if (X(instance, a) == X(instance, d)) continue;
    if (X(instance, a) > X(instance, d)) std::swap(a, d);
    const Coord xa = X(instance, a);
    const Coord xd = X(instance, d);
    // Leftmost point of d's set strictly inside (xa, xd) that is not a
    // partner of a.
    const std::vector<Coord>& ys = Coords(instance, d.side);
    int b = -1;
    for (auto it = std::upper_bound(ys.begin(), ys.end(), xa);
         it != ys.end() && *it < xd; ++it) {
      const int index = static_cast<int>(it - ys.begin());
      if (!adjacency.Has(a, PointRef{d.side, index})) {
        b = index;
        break;
      }
    }
    if (b < 0) continue;
    // Rightmost point of a's set strictly inside (xa, xd) that is not a
    // partner of d.
    const std::vector<Coord>& xs = Coords(instance, a.side);
    int c = -1;
    for (auto it = std::lower_bound(xs.begin(), xs.end(), xd);
         it != xs.begin() && *(it - 1) > xa; --it) {
      const int index = static_cast<int>(it - 1 - xs.begin());
      if (!adjacency.Has(d, PointRef{a.side, index})) {
        c = index;
        break;
      }
    }
    if (c < 0 || !(ys[b] < xs[c])) continue;
    const PointRef pb{d.side, b};
    const PointRef pc{a.side, c};
    Record(&report,
           {"skip-edge closure",
            {PairOf(a, d)},
            "(" + Name(instance, a) + ", " + Name(instance, d) +
                ") is matched but neither (" + Name(instance, a) + ", " +
                Name(instance, pb) + ") nor (" + Name(instance, pc) + ", " +
                Name(instance, d) + ") is"});
  }
  return report;
}

StructureReport CheckFullFanClosure(const Instance& instance,
                                    const Matching& matching) {
  const BlockPartition partition(instance);
  const Adjacency adjacency(instance, matching);
  StructureReport report;
  auto covers = [&](PointRef p, int from, int to) {
    for (int w = from; w <= to; w += 2) {
      const Block& block = partition.block(w);
      for (int k = 0; k < block.size; ++k) {
        if (!adjacency.Has(p, PointRef{block.side, block.first + k})) {
          return false;
        }
      }
    }
    return true;
  };
  for (const Pair& pair : matching.pairs) {
    PointRef a{Side::kS, pair.s};
    PointRef d{Side::kT, pair.t};
    if (partition.block_of(a.side, a.index) >
        partition.block_of(d.side, d.index)) {
      std::swap(a, d);
    }
    const int wa = partition.block_of(a.side, a.index);
    const int wd = partition.block_of(d.side, d.index);
    if (wd - wa <= 1) continue;
    if (covers(a, wa + 1, wd - 2) || covers(d, wa + 2, wd - 1)) continue;
    Record(&report, {"full-fan closure",
                     {PairOf(a, d)},
                     "(" + Name(instance, a) + ", " + Name(instance, d) +
                         ") skips blocks without a full fan on either end"});
  }
  return report;
}

StructureReport CheckCrossingClosure(const Instance& instance,
                                     const Matching& matching) {
  const Adjacency adjacency(instance, matching);
  StructureReport report;
  const std::vector<Pair>& pairs = matching.pairs;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      if (p == q) continue;
      // a, d on the S side: a = s of p, c = t of p, b = t of q, d = s of q.
      // a, d on the T side: a = t of p, c = s of p, b = s of q, d = t of q.
      for (Side outer : {Side::kS, Side::kT}) {
        const PointRef a = outer == Side::kS ? PointRef{Side::kS, pairs[p].s}
                                             : PointRef{Side::kT, pairs[p].t};
        const PointRef c = outer == Side::kS ? PointRef{Side::kT, pairs[p].t}
                                             : PointRef{Side::kS, pairs[p].s};
        const PointRef b = outer == Side::kS ? PointRef{Side::kT, pairs[q].t}
                                             : PointRef{Side::kS, pairs[q].s};
        const PointRef d = outer == Side::kS ? PointRef{Side::kS, pairs[q].s}
                                             : PointRef{Side::kT, pairs[q].t};
        if (!(X(instance, a) <= X(instance, b) &&
              X(instance, b) < X(instance, c) &&
              X(instance, c) <= X(instance, d))) {
          continue;
        }
        if (adjacency.Has(a, b) || adjacency.Has(c, d)) continue;
        Record(&report,
               {"crossing closure",
                {pairs[p], pairs[q]},
                "(" + Name(instance, a) + ", " + Name(instance, c) + ") and (" +
                    Name(instance, b) + ", " + Name(instance, d) +
                    ") cross without (" + Name(instance, a) + ", " +
                    Name(instance, b) + ") or (" + Name(instance, c) + ", " +
                    Name(instance, d) + ")"});
      }
    }
  }
  return report;
}

StructureReport CheckAdjacentBlocksOnly(const Instance& instance,
                                        const Matching& matching) {
  const BlockPartition partition(instance);
  StructureReport report;
  for (const Pair& pair : matching.pairs) {
    const int ws = partition.block_of(Side::kS, pair.s);
    const int wt = partition.block_of(Side::kT, pair.t);
    if (ws - wt == 1 || wt - ws == 1) continue;
    Record(&report, {"adjacent blocks only",
                     {pair},
                     "(" + Name(instance, {Side::kS, pair.s}) + ", " +
                         Name(instance, {Side::kT, pair.t}) +
                         ") joins blocks " + std::to_string(ws) + " and " +
                         std::to_string(wt)});
  }
  return report;
}

StructureReport CheckSeparatingPoints(const Instance& instance,
                                      const Matching& matching) {
  const BlockPartition partition(instance);
  const Adjacency adjacency(instance, matching);
  StructureReport report;
  for (int w = 0; w < partition.num_blocks(); ++w) {
    const Block& block = partition.block(w);
    int first_right = -1;
    for (int k = 0; k < block.size; ++k) {
      const PointRef p{block.side, block.first + k};
      bool left = false;
      bool right = false;
      for (int partner : adjacency.partners(p)) {
        const int other = partition.block_of(Other(p.side), partner);
        left = left || other < w;
        right = right || other > w;
      }
      if (left && first_right >= 0) {
        Record(&report,
               {"separating point",
                {},
                Name(instance, {block.side, block.first + first_right}) +
                    " is matched rightward before " + Name(instance, p) +
                    " is matched leftward"});
        break;
      }
      if (right && first_right < 0) first_right = k;
    }
  }
  return report;
}

ExchangeCosts ExchangeIdentity(Coord a, Coord a2, Coord b, Coord b2) {
  auto distance = [](Coord u, Coord v) {
    const Cost d = static_cast<Cost>(u) - v;
    return d < 0 ? -d : d;
  };
  return {distance(a, b) + distance(a2, b2), distance(a, b2) + distance(a2, b)};
}

}  // namespace linematch
