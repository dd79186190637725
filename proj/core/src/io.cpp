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

#include "vhl/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace vhl {
namespace {

using Json = nlohmann::ordered_json;

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

Json complex_list(const CMatrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out.push_back(complex_pair(m(i, j)));
  return out;
}

Json echo_object(const ConfigEcho& echo) {
  Json obj = Json::object();
  for (const auto& [key, value] : echo) obj[key] = value;
  return obj;
}

[[noreturn]] void field_error(const std::string& field,
                              const std::string& what) {
  throw ParseError("field '" + field + "': " + what);
}

const Json& require(const Json& obj, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) field_error(key, "missing");
  return *it;
}

Index read_dim(const Json& obj, const std::string& key) {
  const Json& v = require(obj, key);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    field_error(key, "expected a positive integer");
  return static_cast<Index>(v.get<long long>());
}

double read_number(const Json& v, const std::string& field) {
  if (!v.is_number()) field_error(field, "expected a number");
  return v.get<double>();
}

Complex read_complex(const Json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2)
    field_error(field, "expected an [re, im] pair");
  return {read_number(v[0], field + "[0]"), read_number(v[1], field + "[1]")};
}

CMatrix read_complex_matrix(const Json& v, const std::string& field,
                            Index rows, Index cols) {
  if (!v.is_array()) field_error(field, "expected an array of [re, im] pairs");
  if (static_cast<Index>(v.size()) != rows * cols)
    field_error(field, "expected " + std::to_string(rows * cols) +
                           " entries, found " + std::to_string(v.size()));
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      const auto k = static_cast<std::size_t>(i * cols + j);
      m(i, j) = read_complex(v[k], field + "[" + std::to_string(k) + "]");
    }
  return m;
}

std::string position_context(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

Json vector_json(const std::vector<double>& v) { return Json(v); }

}  // namespace

std::string instance_to_json(const ProblemInstance& inst,
                             const ConfigEcho& echo) {
  Json j;
  if (!echo.empty()) j["config"] = echo_object(echo);
  j["n"] = inst.n;
  j["s"] = inst.s;
  j["r"] = inst.r;
  j["seed"] = inst.seed;
  j["separated"] = inst.separated;
  j["subspace"] = to_string(inst.subspace);
  j["B"] = complex_list(inst.B);
  j["y"] = complex_list(inst.y);
  if (inst.truth) {
    const PointSourceModel& m = inst.truth->model;
    Json t;
    t["locations"] = m.locations;
    Json amps = Json::array();
    for (Complex d : m.amplitudes) amps.push_back(complex_pair(d));
    t["amplitudes"] = std::move(amps);
    Json coeffs = Json::array();
    for (const CVector& h : m.coefficients) coeffs.push_back(complex_list(h));
    t["coefficients"] = std::move(coeffs);
    j["truth"] = std::move(t);
  }
  return j.dump(1) + "\n";
}

ProblemInstance instance_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed JSON at " + position_context(text, e.byte) +
                     ": " + e.what());
  }
  if (!j.is_object()) throw ParseError("instance: top level must be an object");

  ProblemInstance inst;
  inst.n = read_dim(j, "n");
  inst.s = read_dim(j, "s");
  inst.r = read_dim(j, "r");
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned() && !it->is_number_integer())
      field_error("seed", "expected a non-negative integer");
    inst.seed = it->get<std::uint64_t>();
  }
  if (auto it = j.find("separated"); it != j.end()) {
    if (!it->is_boolean()) field_error("separated", "expected a boolean");
    inst.separated = it->get<bool>();
  }
  if (auto it = j.find("subspace"); it != j.end()) {
    const auto kind = it->is_string()
                          ? parse_subspace_kind(it->get<std::string>())
                          : std::nullopt;
    if (!kind)
      field_error("subspace", "expected \"iid_dft_rows\" or \"dft_columns\"");
    inst.subspace = *kind;
  }
  inst.B = read_complex_matrix(require(j, "B"), "B", inst.n, inst.s);
  inst.y = read_complex_matrix(require(j, "y"), "y", inst.n, 1).col(0);

  if (auto it = j.find("truth"); it != j.end() && !it->is_null()) {
    const Json& t = *it;
    if (!t.is_object()) field_error("truth", "expected an object");
    GroundTruth truth;
    const Json& locs = require(t, "locations");
    const Json& amps = require(t, "amplitudes");
    const Json& coeffs = require(t, "coefficients");
    if (!locs.is_array() || static_cast<Index>(locs.size()) != inst.r)
      field_error("truth.locations", "expected " + std::to_string(inst.r) +
                                         " locations");
    if (!amps.is_array() || static_cast<Index>(amps.size()) != inst.r)
      field_error("truth.amplitudes", "expected " + std::to_string(inst.r) +
                                          " amplitudes");
    if (!coeffs.is_array() || static_cast<Index>(coeffs.size()) != inst.r)
      field_error("truth.coefficients", "expected " + std::to_string(inst.r) +
                                            " coefficient vectors");
    for (Index k = 0; k < inst.r; ++k) {
      const std::string idx = "[" + std::to_string(k) + "]";
      const double tau = read_number(locs[k], "truth.locations" + idx);
      if (!(tau >= 0.0 && tau < 1.0))
        field_error("truth.locations" + idx, "must lie in [0, 1)");
      truth.model.locations.push_back(tau);
      truth.model.amplitudes.push_back(
          read_complex(amps[k], "truth.amplitudes" + idx));
      truth.model.coefficients.push_back(
          read_complex_matrix(coeffs[k], "truth.coefficients" + idx, inst.s, 1)
              .col(0));
    }
    truth.signal = synthesize_signal(truth.model, inst.n);
    const CVector expected = forward_measure(inst.B, truth.signal);
    const double scale = std::max(expected.norm(), 1e-300);
    if ((expected - inst.y).norm() > 1e-10 * scale)
      field_error("truth", "does not reproduce y within 1e-10 relative error");
    inst.truth = std::move(truth);
  }
  return inst;
}

std::string report_to_json(const SolverReport& report, const ConfigEcho& echo,
                           const ReportExtras& extras) {
  Json j;
  j["config"] = echo_object(echo);
  j["stop_reason"] = to_string(report.stop);
  j["iterations"] = report.iterations;
  j["final_residual"] =
      report.residuals.empty() ? 0.0 : report.residuals.back();
  if (extras.rel_error) j["rel_error"] = *extras.rel_error;
  j["svd_converged"] = report.svd_converged;
  j["feasible_set"] = {{"mu", report.params.mu},
                       {"sigma", report.params.sigma},
                       {"bound", report.params.bound()}};
  Json traces;
  traces["residual"] = vector_json(report.residuals);
  traces["objective"] = vector_json(report.objectives);
  if (!report.distances.empty())
    traces["distance"] = vector_json(report.distances);
  if (!report.rel_errors.empty())
    traces["rel_error"] = vector_json(report.rel_errors);
  traces["step_size"] = vector_json(report.step_sizes);
  j["traces"] = std::move(traces);
  if (extras.include_factors) {
    j["factors"] = {{"rank", report.factors.rank()},
                    {"L", complex_list(report.factors.L)},
                    {"R", complex_list(report.factors.R)}};
  }
  return j.dump(1) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace vhl
