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

// Point-source signal model: ground-truth spikes, the subspace matrix B, the
// lifted signal X = sum_k d_k h_k a(tau_k)^T, and the measurement map
// y_j = b_j^H x_j.

#ifndef VHL_MODEL_HPP_
#define VHL_MODEL_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vhl/types.hpp"

namespace vhl {

struct PointSourceModel {
  std::vector<double> locations;      // tau_k in [0, 1)
  std::vector<Complex> amplitudes;    // d_k
  std::vector<CVector> coefficients;  // h_k in C^s, unit norm

  Index order() const { return static_cast<Index>(locations.size()); }
  Index subspace_dim() const {
    return coefficients.empty() ? 0 : coefficients.front().size();
  }
};

struct GroundTruth {
  PointSourceModel model;
  CMatrix signal;  // s x n
};

// How the rows b_j of the subspace matrix are drawn.
enum class SubspaceKind {
  kIidDftRows,  // each b_j an i.i.d. uniform row of the s x s DFT matrix
  kDftColumns,  // s distinct columns of the n x n DFT matrix, shared by all j
};

// "iid_dft_rows" / "dft_columns".
std::string to_string(SubspaceKind kind);
std::optional<SubspaceKind> parse_subspace_kind(std::string_view name);

struct ProblemInstance {
  Index n = 0;
  Index s = 0;
  Index r = 0;
  std::uint64_t seed = 0;
  bool separated = false;
  SubspaceKind subspace = SubspaceKind::kIidDftRows;
  CMatrix B;  // n x s, row j is b_j
  CVector y;  // length n
  std::optional<GroundTruth> truth;
};

// Entries exp(-2 pi i tau t), t = 0..m-1. tau is reduced mod 1.
CVector steering_vector(double tau, Index m);

// Wrap-around distance between two points of the unit circle [0, 1).
double cyclic_distance(double a, double b);

// Smallest pairwise wrap-around distance; +inf for fewer than two points.
double min_cyclic_gap(std::span<const double> locations);

// Draws r spikes: tau_k ~ U[0,1), d_k = (1 + 10^{c_k}) e^{-i phi_k} with
// c_k ~ U[0,1], phi_k ~ U[0,2pi), h_k standard complex Gaussian normalized
// to unit norm. With `separated`, whole location sets are redrawn until the
// minimum cyclic gap is at least 1/n (at most kMaxSeparationRounds tries).
PointSourceModel generate_model(Index n, Index s, Index r, bool separated,
                                std::uint64_t seed);

inline constexpr int kMaxSeparationRounds = 10000;

// X = sum_k d_k h_k a_n(tau_k)^T, shape s x n.
CMatrix synthesize_signal(const PointSourceModel& model, Index n);

// n x s subspace matrix with unit-modulus entries and E[b_j b_j^H] = I.
// kIidDftRows: row j is exp(-2 pi i k_j l / s), k_j ~ U{0..s-1} i.i.d.
// kDftColumns: B[j, l] = exp(-2 pi i j k_l / n), k_1..k_s distinct.
CMatrix generate_subspace(Index n, Index s, std::uint64_t seed,
                          SubspaceKind kind = SubspaceKind::kIidDftRows);

// y_j = b_j^H x_j.
CVector forward_measure(const CMatrix& B, const CMatrix& X);

// Full instance: model, subspace and measurements from one seed.
ProblemInstance make_instance(Index n, Index s, Index r, bool separated,
                              std::uint64_t seed,
                              SubspaceKind kind = SubspaceKind::kIidDftRows);

}  // namespace vhl

#endif  // VHL_MODEL_HPP_
