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


// Brute-force reference implementations used as test oracles. Nothing here
// calls the library's operators; everything is written from the definitions
// with explicit loops and dense matrices.

#ifndef VHL_TESTS_SUPPORT_ORACLES_HPP_
#define VHL_TESTS_SUPPORT_ORACLES_HPP_

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "vhl/types.hpp"

namespace vhl::oracle {

// trace(A^H B)
inline Complex inner(const CMatrix& a, const CMatrix& b) {
  Complex acc = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) acc += std::conj(a(i, j)) * b(i, j);
  return acc;
}

inline CMatrix random_matrix(Index rows, Index cols, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex(nd(gen), nd(gen));
  return m;
}

inline CVector steering(double tau, Index m) {
  CVector a(m);
  for (Index t = 0; t < m; ++t)
    a[t] = std::polar(1.0, -2.0 * kPi * tau * static_cast<double>(t));
  return a;
}

// Block (i, k) of the lift is column i + k of X.
inline CMatrix lift(const CMatrix& X, Index n1) {
  const Index s = X.rows(), n = X.cols(), n2 = n + 1 - n1;
  CMatrix H(s * n1, n2);
  for (Index i = 0; i < n1; ++i)
    for (Index k = 0; k < n2; ++k)
      for (Index l = 0; l < s; ++l) H(i * s + l, k) = X(l, i + k);
  return H;
}

// Counts the cells holding each signal column.
inline Eigen::VectorXd counted_weights(Index n, Index n1) {
  const Index n2 = n + 1 - n1;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  for (Index i = 0; i < n1; ++i)
    for (Index k = 0; k < n2; ++k) w[i + k] += 1.0;
  return w;
}

inline CMatrix adjoint(const CMatrix& Y, Index s, Index n1) {
  const Index n2 = Y.cols(), n = n1 + n2 - 1;
  CMatrix X = CMatrix::Zero(s, n);
  for (Index i = 0; i < n1; ++i)
    for (Index k = 0; k < n2; ++k)
      for (Index l = 0; l < s; ++l) X(l, i + k) += Y(i * s + l, k);
  return X;
}

// The lift written as an explicit (s*n1*n2) x (s*n) matrix acting on
// column-major vec(X), and its Moore-Penrose inverse by complete orthogonal
// decomposition.
inline CMatrix lift_matrix(Index s, Index n, Index n1) {
  const Index n2 = n + 1 - n1;
  const Index rows = s * n1;
  CMatrix M = CMatrix::Zero(rows * n2, s * n);
  for (Index i = 0; i < n1; ++i)
    for (Index k = 0; k < n2; ++k)
      for (Index l = 0; l < s; ++l)
        M(k * rows + i * s + l, (i + k) * s + l) = 1.0;
  return M;
}

inline CMatrix pinv_via_matrix(const CMatrix& Y, Index s, Index n1) {
  const Index n2 = Y.cols(), n = n1 + n2 - 1;
  const CMatrix M = lift_matrix(s, n, n1);
  Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(M);
  const CMatrix Mp = cod.pseudoInverse();
  CVector vecY = Eigen::Map<const CVector>(Y.data(), Y.size());
  CVector vecX = Mp * vecY;
  return Eigen::Map<CMatrix>(vecX.data(), s, n);
}

// y_j = sum_l conj(B(j, l)) X(l, j)
inline CVector measure(const CMatrix& B, const CMatrix& X) {
  CVector y = CVector::Zero(B.rows());
  for (Index j = 0; j < B.rows(); ++j)
    for (Index l = 0; l < B.cols(); ++l) y[j] += std::conj(B(j, l)) * X(l, j);
  return y;
}

inline CMatrix measure_adj(const CVector& y, const CMatrix& B) {
  CMatrix X(B.cols(), B.rows());
  for (Index j = 0; j < B.rows(); ++j)
    for (Index l = 0; l < B.cols(); ++l) X(l, j) = y[j] * B(j, l);
  return X;
}

struct DenseTerms {
  double data = 0.0, structure = 0.0, balance = 0.0;
  double total() const { return data + structure + balance; }
};

// Objective evaluated densely from its definition.
inline DenseTerms objective(const CMatrix& L, const CMatrix& R,
                            const CMatrix& B, const CVector& y, Index n1) {
  const Index s = B.cols();
  const CMatrix W = L * R.adjoint();
  const CMatrix Z = pinv_via_matrix(W, s, n1);
  DenseTerms t;
  t.data = 0.5 * (measure(B, Z) - y).squaredNorm();
  t.structure = 0.5 * (W - lift(Z, n1)).squaredNorm();
  t.balance = (L.adjoint() * L - R.adjoint() * R).squaredNorm() / 16.0;
  return t;
}

struct DenseGradient {
  CMatrix data_L, structure_L, balance_L;
  CMatrix data_R, structure_R, balance_R;
  CMatrix L() const { return data_L + structure_L + balance_L; }
  CMatrix R() const { return data_R + structure_R + balance_R; }
};

// The displayed Wirtinger gradient, term by term, with dense matrices.
inline DenseGradient gradient(const CMatrix& L, const CMatrix& R,
                              const CMatrix& B, const CVector& y, Index n1) {
  const Index s = B.cols(), n = B.rows();
  const CMatrix W = L * R.adjoint();
  const CMatrix Z = pinv_via_matrix(W, s, n1);
  const CVector res = measure(B, Z) - y;
  CMatrix V = measure_adj(res, B);
  const Eigen::VectorXd w = counted_weights(n, n1);
  for (Index j = 0; j < n; ++j) V.col(j) /= w[j];
  const CMatrix G = lift(V, n1);
  const CMatrix S = W - lift(Z, n1);
  const CMatrix E = L.adjoint() * L - R.adjoint() * R;
  DenseGradient g;
  g.data_L = G * R;
  g.structure_L = S * R;
  g.balance_L = 0.25 * L * E;
  g.data_R = G.adjoint() * L;
  g.structure_R = S.adjoint() * L;
  g.balance_R = -0.25 * R * E;
  return g;
}

// 1 / ||(I - V V^H) g(tau)||^2 with g = conj(a_m(tau)) / sqrt(m).
inline double music_value(const CMatrix& V, double tau) {
  const Index m = V.rows();
  CVector g = steering(tau, m).conjugate() / std::sqrt(static_cast<double>(m));
  const CVector perp = g - V * (V.adjoint() * g);
  return 1.0 / perp.squaredNorm();
}

inline double cyclic_gap(double a, double b) {
  double d = std::fmod(std::fabs(a - b), 1.0);
  return std::min(d, 1.0 - d);
}

}  // namespace vhl::oracle

#endif  // VHL_TESTS_SUPPORT_ORACLES_HPP_
