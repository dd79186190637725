// Copyright 2026 The vhl Authors. All Rights Reserved.
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


// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it in-process.

#ifndef VHL_CLI_CLI_HPP_
#define VHL_CLI_CLI_HPP_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "vhl/harness.hpp"
#include "vhl/types.hpp"

namespace vhl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;

// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// "a", "a..b" or "a..b:step", inclusive. Throws std::invalid_argument.
IntRange parse_range(std::string_view text);

// Comma-separated ranges, concatenated in order.
std::vector<Index> parse_list(std::string_view text);

}  // namespace vhl::cli

#endif  // VHL_CLI_CLI_HPP_
