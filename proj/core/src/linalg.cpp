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

#include "vhl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vhl/rng.hpp"

namespace vhl {
namespace {

CMatrix orthonormalize(const CMatrix& Y) {
  Eigen::HouseholderQR<CMatrix> qr(Y);
  return qr.householderQ() * CMatrix::Identity(Y.rows(), Y.cols());
}

void require_rank(Index rows, Index cols, Index rank) {
  if (rank < 1 || rank > std::min(rows, cols))
    throw std::invalid_argument(
        "truncated_svd: rank " + std::to_string(rank) +
        " outside [1, min(" + std::to_string(rows) + ", " +
        std::to_string(cols) + ")]");
}

}  // namespace

MatrixOracle MatrixOracle::from_dense(const CMatrix& A) {
  MatrixOracle op;
  op.rows = A.rows();
  op.cols = A.cols();
  op.apply = [A](const CMatrix& X) -> CMatrix { return A * X; };
  op.apply_adjoint = [A](const CMatrix& Y) -> CMatrix {
    return A.adjoint() * Y;
  };
  return op;
}

TruncatedSvd truncated_svd_dense(const CMatrix& A, Index rank) {
  require_rank(A.rows(), A.cols(), rank);
  if (!A.allFinite())
    throw NumericalError("truncated_svd: input has non-finite entries");
  Eigen::BDCSVD<CMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  TruncatedSvd out;
  out.U = svd.matrixU().leftCols(rank);
  out.S = svd.singularValues().head(rank);
  out.V = svd.matrixV().leftCols(rank);
  out.dense = true;
  return out;
}

TruncatedSvd truncated_svd(const MatrixOracle& op, Index rank,
                           std::uint64_t seed, const SvdOptions& opts) {
  require_rank(op.rows, op.cols, rank);
  if (op.rows * op.cols < opts.dense_threshold)
    return truncated_svd_dense(op.apply(CMatrix::Identity(op.cols, op.cols)),
                               rank);

  const Index width =
      std::min(rank + opts.oversampling, std::min(op.rows, op.cols));
  Rng rng(seed);
  CMatrix omega(op.cols, width);
  for (Index j = 0; j < width; ++j)
    for (Index i = 0; i < op.cols; ++i) omega(i, j) = rng.complex_normal();

  CMatrix Q = orthonormalize(op.apply(omega));
  auto power_step = [&] {
    Q = orthonormalize(op.apply(orthonormalize(op.apply_adjoint(Q))));
  };

  TruncatedSvd out;
  int iter = 0;
  for (; iter < opts.power_iterations; ++iter) power_step();

  while (true) {
    // Rayleigh-Ritz on the range basis: A^H Q = P S W^H gives A ~ (Q W) S P^H.
    const CMatrix AhQ = op.apply_adjoint(Q);
    Eigen::JacobiSVD<CMatrix> small(AhQ,
                                    Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.U = Q * small.matrixV().leftCols(rank);
    out.S = small.singularValues().head(rank);
    out.V = small.matrixU().leftCols(rank);
    if (!out.U.allFinite() || !out.V.allFinite() || !out.S.allFinite())
      throw NumericalError("truncated_svd: non-finite factors");

    const double sigma1 = out.S[0];
    const CMatrix AV = op.apply(out.V);
    out.residual = sigma1 > 0.0
                       ? (AV - out.U * out.S.asDiagonal()).norm() / sigma1
                       : 0.0;
    out.iterations = iter;
    if (out.residual <= opts.tolerance) {
      out.converged = true;
      break;
    }
    if (iter >= opts.max_iterations) {
      out.converged = false;
      break;
    }
    power_step();
    ++iter;
  }
  return out;
}

double procrustes_distance(const FactorPair& m, const FactorPair& ref) {
  if (m.L.rows() != ref.L.rows() || m.R.rows() != ref.R.rows() ||
      m.rank() != ref.rank())
    throw ShapeError("procrustes_distance: factor shapes disagree");
  const CMatrix M = m.stacked();
  const CMatrix Mref = ref.stacked();
  Eigen::JacobiSVD<CMatrix> svd(Mref.adjoint() * M,
                                Eigen::ComputeFullU | Eigen::ComputeFullV);
  const CMatrix Q = svd.matrixU() * svd.matrixV().adjoint();
  return (M - Mref * Q).norm();
}

SpectralStats spectral_stats(const RVector& singular_values) {
  if (singular_values.size() == 0)
    throw std::invalid_argument("spectral_stats: empty spectrum");
  SpectralStats st;
  st.sigma_max = singular_values.maxCoeff();
  st.sigma_min = singular_values.minCoeff();
  if (st.sigma_min < 0.0)
    throw std::invalid_argument("spectral_stats: negative singular value");
  st.singular = st.sigma_min == 0.0;
  st.condition = st.singular ? std::numeric_limits<double>::infinity()
                             : st.sigma_max / st.sigma_min;
  return st;
}

}  // namespace vhl
