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

// Cost values extended with a distinct "unreachable" element used by the
// dynamic-programming tables.

#ifndef LINEMATCH_EXTENDED_COST_H_
#define LINEMATCH_EXTENDED_COST_H_

#include <compare>
#include <string>

#include "linematch/core.h"

namespace linematch {

class ExtendedCost {
 public:
  constexpr ExtendedCost() = default;  // unreachable
  constexpr explicit ExtendedCost(Cost value) : finite_(true), value_(value) {}

  static constexpr ExtendedCost Unreachable() { return ExtendedCost(); }

  constexpr bool finite() const { return finite_; }
  // Precondition: finite().
  constexpr Cost value() const { return value_; }

  friend constexpr ExtendedCost operator+(ExtendedCost a, Cost b) {
    return a.finite_ ? ExtendedCost(a.value_ + b) : a;
  }
  friend constexpr bool operator==(ExtendedCost a, ExtendedCost b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  // Unreachable compares greater than every finite value.
  friend constexpr std::strong_ordering operator<=>(ExtendedCost a,
                                                    ExtendedCost b) {
    if (!a.finite_ || !b.finite_) {
      return static_cast<int>(!a.finite_) <=> static_cast<int>(!b.finite_);
    }
    return a.value_ < b.value_   ? std::strong_ordering::less
           : a.value_ > b.value_ ? std::strong_ordering::greater
                                 : std::strong_ordering::equal;
  }

  std::string ToString() const {
    return finite_ ? CostToString(value_) : std::string("inf");
  }

 private:
  bool finite_ = false;
  Cost value_ = 0;
};

}  // namespace linematch

#endif  // LINEMATCH_EXTENDED_COST_H_
