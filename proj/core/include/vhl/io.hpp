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

// JSON files: problem instances and solver reports. Complex arrays are
// stored as lists of [re, im] pairs, matrices row-major.

#ifndef VHL_IO_HPP_
#define VHL_IO_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vhl/model.hpp"
#include "vhl/solver.hpp"

namespace vhl {

// Resolved run configuration, echoed at the top of every output file.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

std::string instance_to_json(const ProblemInstance& inst,
                             const ConfigEcho& echo = {});

// Throws ParseError with line/column context for malformed JSON and with the
// offending field for schema violations. A truth block is checked against y.
ProblemInstance instance_from_json(std::string_view text);

struct ReportExtras {
  std::optional<double> rel_error;  // final ||X_T - X||_F / ||X||_F
  bool include_factors = false;
};

std::string report_to_json(const SolverReport& report, const ConfigEcho& echo,
                           const ReportExtras& extras = {});

std::string read_text_file(const std::filesystem::path& path);

// Truncates and replaces; throws std::runtime_error when the path cannot be
// opened.
void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace vhl

#endif  // VHL_IO_HPP_
