// Copyright 2026 The lerw Authors
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

#ifndef LERW_CLI_CLI_HPP_
#define LERW_CLI_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace lerw::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

// Runs the lerw command line. args excludes the program name. Returns the
// process exit code: 0 pass, 1 failed check (a counterexample is written to
// the output directory), 2 usage or configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lerw::cli

#endif  // LERW_CLI_CLI_HPP_
