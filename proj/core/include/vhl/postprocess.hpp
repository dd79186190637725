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

// Location and weight recovery from a recovered signal matrix.
//
// The row space of H(X) for X = sum_k d_k h_k a(tau_k)^T is spanned by the
// conjugated steering vectors conj(a_{n2}(tau_k)), independent of h_k. MUSIC
// therefore scans g(tau) = conj(a_{n2}(tau)) / sqrt(n2) against the top-r
// right singular subspace V of H(X):
//
//   J(tau) = 1 / ||(I - V V^H) g(tau)||^2.
//
// Given locations, y is linear in v_k = d_k h_k and the weights follow from
// an overdetermined least-squares solve.

#ifndef VHL_POSTPROCESS_HPP_
#define VHL_POSTPROCESS_HPP_

#include <span>
#include <vector>

#include "vhl/operators.hpp"
#include "vhl/types.hpp"

namespace vhl {

struct MusicPeak {
  double location = 0.0;
  double value = 0.0;       // J at the refined location
  double grid_value = 0.0;  // J at the grid point the peak started from
};

struct MusicSpectrum {
  std::vector<double> grid;    // k / grid_size, sorted
  std::vector<double> values;  // J on the grid
  std::vector<MusicPeak> peaks;  // sorted by location
  // Set when fewer than r separated peaks exist; `peaks` holds what was
  // found.
  bool degraded = false;
};

inline constexpr Index kDefaultMusicGrid = 4096;

MusicSpectrum music_locations(const CMatrix& X, Index r,
                              const HankelShape& shape,
                              Index grid_size = kDefaultMusicGrid);

// Denominator ||(I - V V^H) g(tau)||^2 of the pseudospectrum, for a V with
// orthonormal columns. Exposed for testing and brute-force scans.
double music_null_energy(const CMatrix& V, double tau);

struct WeightEstimate {
  std::vector<CVector> weights;       // v_k = d_k h_k
  std::vector<Complex> amplitudes;    // d_k
  std::vector<CVector> coefficients;  // h_k, unit norm, first nonzero > 0
  double residual = 0.0;              // ||y - model(v)||_2
  double condition = 0.0;             // of the system matrix
};

// Largest system condition number accepted before reporting failure.
inline constexpr double kMaxWeightCondition = 1e10;

WeightEstimate recover_weights(const CMatrix& B, const CVector& y,
                               std::span<const double> locations);

// Minimum over permutations of the largest cyclic distance between matched
// locations, with the matching. Brute force; intended for r <= 8.
struct LocationMatch {
  std::vector<Index> assignment;  // estimate index for each truth index
  double max_distance = 0.0;
};

LocationMatch match_locations(std::span<const double> truth,
                              std::span<const double> estimate);

}  // namespace vhl

#endif  // VHL_POSTPROCESS_HPP_
