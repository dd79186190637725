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

// Truncated SVD with operator access, and low-rank diagnostics.

#ifndef VHL_LINALG_HPP_
#define VHL_LINALG_HPP_

#include <cstdint>
#include <functional>

#include "vhl/factor_pair.hpp"
#include "vhl/types.hpp"

namespace vhl {

// A linear map given only through products with blocks of vectors.
struct MatrixOracle {
  Index rows = 0;
  Index cols = 0;
  std::function<CMatrix(const CMatrix&)> apply;          // A * X
  std::function<CMatrix(const CMatrix&)> apply_adjoint;  // A^H * Y

  static MatrixOracle from_dense(const CMatrix& A);
};

struct TruncatedSvd {
  CMatrix U;  // rows x r, orthonormal columns
  RVector S;  // non-increasing, >= 0
  CMatrix V;  // cols x r, orthonormal columns
  bool converged = true;
  double residual = 0.0;  // ||A V - U S||_F / sigma_1 at exit
  int iterations = 0;     // power iterations performed (0 on dense path)
  bool dense = false;
};

struct SvdOptions {
  Index oversampling = 8;
  int power_iterations = 10;
  int max_iterations = 50;
  double tolerance = 1e-8;
  // Operators with fewer entries than this are materialized and decomposed
  // densely.
  Index dense_threshold = 200000;
};

// Top-`rank` singular triplets. Uses randomized subspace iteration with
// Rayleigh-Ritz extraction, or a dense decomposition below the threshold.
// Non-convergence is reported in the result rather than thrown.
TruncatedSvd truncated_svd(const MatrixOracle& op, Index rank,
                           std::uint64_t seed, const SvdOptions& opts = {});

TruncatedSvd truncated_svd_dense(const CMatrix& A, Index rank);

// min over unitary Q of ||M - Mref Q||_F, Q the polar factor of Mref^H M.
double procrustes_distance(const FactorPair& m, const FactorPair& ref);

struct SpectralStats {
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  double condition = 0.0;  // +inf when sigma_min == 0
  bool singular = false;
};

SpectralStats spectral_stats(const RVector& singular_values);

}  // namespace vhl

#endif  // VHL_LINALG_HPP_
