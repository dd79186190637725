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

#include "vhl/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vhl/rng.hpp"

namespace vhl {

CVector steering_vector(double tau, Index m) {
  if (m < 1) throw ShapeError("steering_vector: length must be >= 1");
  tau -= std::floor(tau);
  CVector a(m);
  for (Index t = 0; t < m; ++t) {
    // Reduce tau * t mod 1 before scaling so large t keeps full accuracy.
    double phase = tau * static_cast<double>(t);
    phase -= std::floor(phase);
    a[t] = std::polar(1.0, -2.0 * kPi * phase);
  }
  return a;
}

double cyclic_distance(double a, double b) {
  double d = std::fabs(a - b);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

double min_cyclic_gap(std::span<const double> locations) {
  if (locations.size() < 2) return std::numeric_limits<double>::infinity();
  std::vector<double> sorted(locations.begin(), locations.end());
  std::sort(sorted.begin(), sorted.end());
  double gap = sorted.front() + 1.0 - sorted.back();
  for (std::size_t k = 1; k < sorted.size(); ++k)
    gap = std::min(gap, sorted[k] - sorted[k - 1]);
  return gap;
}

PointSourceModel generate_model(Index n, Index s, Index r, bool separated,
                                std::uint64_t seed) {
  if (n < 1 || s < 1 || r < 1)
    throw std::invalid_argument("generate_model: n, s, r must be >= 1");
  if (separated && r > n)
    throw GenerationError("generate_model: " + std::to_string(r) +
                          " spikes cannot be separated by 1/" +
                          std::to_string(n) + " on the unit circle");

  Rng rng(seed);
  PointSourceModel model;
  model.locations.resize(r);
  const double min_gap = 1.0 / static_cast<double>(n);
  int rounds = 0;
  while (true) {
    for (auto& tau : model.locations) tau = rng.uniform();
    if (!separated || min_cyclic_gap(model.locations) >= min_gap) break;
    if (++rounds >= kMaxSeparationRounds)
      throw GenerationError(
          "generate_model: no separated location set found after " +
          std::to_string(kMaxSeparationRounds) + " rounds (n=" +
          std::to_string(n) + ", r=" + std::to_string(r) + ")");
  }

  model.amplitudes.resize(r);
  for (auto& d : model.amplitudes) {
    const double c = rng.uniform();
    const double phi = rng.uniform(0.0, 2.0 * kPi);
    d = std::polar(1.0 + std::pow(10.0, c), -phi);
  }

  model.coefficients.resize(r);
  for (auto& h : model.coefficients) {
    h.resize(s);
    for (Index l = 0; l < s; ++l) h[l] = rng.complex_normal();
    h /= h.norm();
  }
  return model;
}

CMatrix synthesize_signal(const PointSourceModel& model, Index n) {
  const Index r = model.order();
  const Index s = model.subspace_dim();
  if (static_cast<Index>(model.amplitudes.size()) != r ||
      static_cast<Index>(model.coefficients.size()) != r)
    throw ShapeError("synthesize_signal: inconsistent model list lengths");
  CMatrix X = CMatrix::Zero(s, n);
  for (Index k = 0; k < r; ++k) {
    const CVector a = steering_vector(model.locations[k], n);
    X.noalias() += (model.amplitudes[k] * model.coefficients[k]) *
                   a.transpose();
  }
  return X;
}

std::string to_string(SubspaceKind kind) {
  return kind == SubspaceKind::kDftColumns ? "dft_columns" : "iid_dft_rows";
}

std::optional<SubspaceKind> parse_subspace_kind(std::string_view name) {
  if (name == "iid_dft_rows") return SubspaceKind::kIidDftRows;
  if (name == "dft_columns") return SubspaceKind::kDftColumns;
  return std::nullopt;
}

CMatrix generate_subspace(Index n, Index s, std::uint64_t seed,
                          SubspaceKind kind) {
  if (n < 1 || s < 1)
    throw std::invalid_argument("generate_subspace: n, s must be >= 1");
  Rng rng(seed);
  CMatrix B(n, s);
  if (kind == SubspaceKind::kDftColumns) {
    if (s > n)
      throw std::invalid_argument("generate_subspace: s = " +
                                  std::to_string(s) + " exceeds n = " +
                                  std::to_string(n));
    // Partial Fisher-Yates over 0..n-1 picks s distinct column indices.
    std::vector<Index> idx(n);
    for (Index i = 0; i < n; ++i) idx[i] = i;
    for (Index l = 0; l < s; ++l) {
      const auto pick = l + static_cast<Index>(rng.uniform_index(n - l));
      std::swap(idx[l], idx[pick]);
    }
    for (Index l = 0; l < s; ++l)
      for (Index j = 0; j < n; ++j)
        B(j, l) = std::polar(1.0, -2.0 * kPi *
                                      static_cast<double>((j * idx[l]) % n) /
                                      static_cast<double>(n));
  } else {
    for (Index j = 0; j < n; ++j) {
      const auto row = static_cast<Index>(rng.uniform_index(s));
      for (Index l = 0; l < s; ++l)
        B(j, l) = std::polar(1.0, -2.0 * kPi *
                                      static_cast<double>((row * l) % s) /
                                      static_cast<double>(s));
    }
  }
  return B;
}

CVector forward_measure(const CMatrix& B, const CMatrix& X) {
  if (B.rows() != X.cols() || B.cols() != X.rows())
    throw ShapeError("forward_measure: B is " + std::to_string(B.rows()) +
                     "x" + std::to_string(B.cols()) + " but X is " +
                     std::to_string(X.rows()) + "x" +
                     std::to_string(X.cols()));
  // y_j = sum_l conj(B[j,l]) X[l,j]
  return B.conjugate().cwiseProduct(X.transpose()).rowwise().sum();
}

ProblemInstance make_instance(Index n, Index s, Index r, bool separated,
                              std::uint64_t seed, SubspaceKind kind) {
  ProblemInstance inst;
  inst.n = n;
  inst.s = s;
  inst.r = r;
  inst.seed = seed;
  inst.separated = separated;
  inst.subspace = kind;
  GroundTruth truth;
  truth.model = generate_model(n, s, r, separated, derive_seed(seed, {1}));
  truth.signal = synthesize_signal(truth.model, n);
  inst.B = generate_subspace(n, s, derive_seed(seed, {2}), kind);
  inst.y = forward_measure(inst.B, truth.signal);
  inst.truth = std::move(truth);
  return inst;
}

}  // namespace vhl
