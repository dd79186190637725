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

#include "vhl/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "vhl/linalg.hpp"
#include "vhl/model.hpp"

namespace vhl {
namespace {

constexpr double kGoldenTolerance = 1e-10;

double wrap_unit(double tau) { return tau - std::floor(tau); }

double pseudospectrum(double null_energy) {
  return 1.0 / std::max(null_energy, std::numeric_limits<double>::min());
}

// Golden-section minimization of the null energy on [lo, hi]; returns the
// best point seen, including `start`.
double refine(const CMatrix& V, double start, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double best = start;
  double best_val = music_null_energy(V, start);
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = music_null_energy(V, c);
  double fd = music_null_energy(V, d);
  while (b - a > kGoldenTolerance) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = music_null_energy(V, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = music_null_energy(V, d);
    }
  }
  for (const auto& [tau, val] : {std::pair{c, fc}, std::pair{d, fd}}) {
    if (val < best_val) {
      best = tau;
      best_val = val;
    }
  }
  return best;
}

}  // namespace

double music_null_energy(const CMatrix& V, double tau) {
  const Index m = V.rows();
  const CVector g =
      steering_vector(tau, m).conjugate() / std::sqrt(static_cast<double>(m));
  // Residual formed explicitly; 1 - ||V^H g||^2 would lose the small values
  // that locate the peaks.
  return (g - V * (V.adjoint() * g)).squaredNorm();
}

MusicSpectrum music_locations(const CMatrix& X, Index r,
                              const HankelShape& shape, Index grid_size) {
  if (X.rows() != shape.s() || X.cols() != shape.n())
    throw ShapeError("music_locations: X disagrees with shape");
  if (r < 1 || r > shape.n2() - 1)
    throw std::invalid_argument("music_locations: r = " + std::to_string(r) +
                                " must lie in [1, n2 - 1 = " +
                                std::to_string(shape.n2() - 1) + "]");
  if (grid_size < 2)
    throw std::invalid_argument("music_locations: grid_size must be >= 2");
  if (X.norm() == 0.0)
    throw std::invalid_argument("music_locations: X is zero");

  MatrixOracle op;
  op.rows = shape.lifted_rows();
  op.cols = shape.lifted_cols();
  op.apply = [&](const CMatrix& R) {
    return fast_lift_times_factor(X, R, shape);
  };
  op.apply_adjoint = [&](const CMatrix& L) {
    return fast_lift_adjoint_times_factor(X, L, shape);
  };
  const CMatrix V = truncated_svd(op, r, 0).V;

  MusicSpectrum out;
  out.grid.resize(grid_size);
  out.values.resize(grid_size);
  for (Index k = 0; k < grid_size; ++k) {
    out.grid[k] = static_cast<double>(k) / static_cast<double>(grid_size);
    out.values[k] = pseudospectrum(music_null_energy(V, out.grid[k]));
  }

  std::vector<Index> candidates;
  for (Index k = 0; k < grid_size; ++k) {
    const double left = out.values[(k + grid_size - 1) % grid_size];
    const double right = out.values[(k + 1) % grid_size];
    if (out.values[k] >= left && out.values[k] > right)
      candidates.push_back(k);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](Index a, Index b) {
                     return out.values[a] > out.values[b];
                   });

  const double min_sep = 0.5 / static_cast<double>(shape.n2());
  const double step = 1.0 / static_cast<double>(grid_size);
  std::vector<Index> picked;
  for (Index k : candidates) {
    if (static_cast<Index>(picked.size()) == r) break;
    const bool clear = std::all_of(picked.begin(), picked.end(), [&](Index p) {
      return cyclic_distance(out.grid[p], out.grid[k]) >= min_sep;
    });
    if (clear) picked.push_back(k);
  }
  out.degraded = static_cast<Index>(picked.size()) < r;

  for (Index k : picked) {
    const double center = out.grid[k];
    const double tau = refine(V, center, center - step, center + step);
    MusicPeak peak;
    peak.location = wrap_unit(tau);
    peak.value = pseudospectrum(music_null_energy(V, tau));
    peak.grid_value = out.values[k];
    out.peaks.push_back(peak);
  }
  std::sort(out.peaks.begin(), out.peaks.end(),
            [](const MusicPeak& a, const MusicPeak& b) {
              return a.location < b.location;
            });
  return out;
}

WeightEstimate recover_weights(const CMatrix& B, const CVector& y,
                               std::span<const double> locations) {
  const Index n = B.rows(), s = B.cols();
  const auto r = static_cast<Index>(locations.size());
  if (y.size() != n)
    throw ShapeError("recover_weights: y and B disagree in length");
  if (r < 1) throw std::invalid_argument("recover_weights: no locations");
  if (n < s * r)
    throw std::invalid_argument("recover_weights: n = " + std::to_string(n) +
                                " < s * r = " + std::to_string(s * r));

  // y_j = sum_k exp(-2 pi i tau_k j) b_j^H v_k
  CMatrix system(n, s * r);
  for (Index k = 0; k < r; ++k) {
    const CVector a = steering_vector(locations[k], n);
    for (Index l = 0; l < s; ++l)
      system.col(k * s + l) = a.cwiseProduct(B.col(l).conjugate());
  }
  Eigen::BDCSVD<CMatrix> svd(system, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& sv = svd.singularValues();
  WeightEstimate est;
  est.condition = sv[sv.size() - 1] > 0.0
                      ? sv[0] / sv[sv.size() - 1]
                      : std::numeric_limits<double>::infinity();
  if (!(est.condition <= kMaxWeightCondition))
    throw NumericalError(
        "recover_weights: system is rank deficient (condition number " +
        std::to_string(est.condition) +
        "); locations are too close to resolve");

  const CVector v = svd.solve(y);
  est.residual = (y - system * v).norm();
  for (Index k = 0; k < r; ++k) {
    CVector vk = v.segment(k * s, s);
    const double norm = vk.norm();
    Complex unit(1.0, 0.0);
    for (Index l = 0; l < s; ++l) {
      if (std::abs(vk[l]) > 1e-12 * norm) {
        unit = vk[l] / std::abs(vk[l]);
        break;
      }
    }
    est.amplitudes.push_back(norm * unit);
    est.coefficients.push_back(norm > 0.0 ? CVector(vk / (norm * unit))
                                          : CVector(vk));
    est.weights.push_back(std::move(vk));
  }
  return est;
}

LocationMatch match_locations(std::span<const double> truth,
                              std::span<const double> estimate) {
  if (truth.size() != estimate.size())
    throw std::invalid_argument("match_locations: size mismatch");
  std::vector<Index> perm(truth.size());
  std::iota(perm.begin(), perm.end(), Index{0});
  LocationMatch best;
  best.max_distance = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t k = 0; k < truth.size(); ++k)
      worst = std::max(worst, cyclic_distance(truth[k], estimate[perm[k]]));
    if (worst < best.max_distance) {
      best.max_distance = worst;
      best.assignment = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (truth.empty()) best.max_distance = 0.0;
  return best;
}

}  // namespace vhl
