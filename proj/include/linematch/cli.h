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

// Command-line front end: solve, verify, gen, compare and bench.

#ifndef LINEMATCH_CLI_H_
#define LINEMATCH_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace linematch {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInfeasible = 3;

// `args` excludes the program name. Documents go to `out`, diagnostics to
// `err`; "-" as a file name means `in` or `out`.
int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err);

}  // namespace linematch

#endif  // LINEMATCH_CLI_H_
