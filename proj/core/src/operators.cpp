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

#include "vhl/operators.hpp"

#include <algorithm>
#include <string>

#include "fft.hpp"

namespace vhl {
namespace {

std::string dims(const CMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_signal(const CMatrix& X, const HankelShape& shape,
                    const char* where) {
  if (X.rows() != shape.s() || X.cols() != shape.n())
    throw ShapeError(std::string(where) + ": expected signal " +
                     std::to_string(shape.s()) + "x" +
                     std::to_string(shape.n()) + ", got " + dims(X));
}

void require_lifted(const CMatrix& Y, const HankelShape& shape,
                    const char* where) {
  if (Y.rows() != shape.lifted_rows() || Y.cols() != shape.lifted_cols())
    throw ShapeError(std::string(where) + ": expected lifted matrix " +
                     std::to_string(shape.lifted_rows()) + "x" +
                     std::to_string(shape.lifted_cols()) + ", got " +
                     dims(Y));
}

}  // namespace

HankelShape HankelShape::balanced(Index n, Index s) {
  return HankelShape(n, s, (n + 1) / 2);
}

HankelShape::HankelShape(Index n, Index s, Index n1)
    : n_(n), s_(s), n1_(n1), n2_(n + 1 - n1) {
  if (n < 1 || s < 1)
    throw ShapeError("HankelShape: n and s must be >= 1");
  if (n1 < 1 || n1 > n)
    throw ShapeError("HankelShape: n1 = " + std::to_string(n1) +
                     " outside [1, " + std::to_string(n) + "]");
}

MultiplicityWeights multiplicities(const HankelShape& shape) {
  const Index n = shape.n();
  MultiplicityWeights w(n);
  for (Index j = 0; j < n; ++j)
    w[j] = std::min({j + 1, shape.n1(), shape.n2(), n - j});
  return w;
}

CMatrix hankel_lift(const CMatrix& X, const HankelShape& shape) {
  require_signal(X, shape, "hankel_lift");
  const Index s = shape.s();
  CMatrix Y(shape.lifted_rows(), shape.lifted_cols());
  for (Index k = 0; k < shape.n2(); ++k)
    for (Index i = 0; i < shape.n1(); ++i)
      Y.block(i * s, k, s, 1) = X.col(i + k);
  return Y;
}

CMatrix hankel_adjoint(const CMatrix& Y, const HankelShape& shape) {
  require_lifted(Y, shape, "hankel_adjoint");
  const Index s = shape.s();
  CMatrix X = CMatrix::Zero(s, shape.n());
  for (Index k = 0; k < shape.n2(); ++k)
    for (Index i = 0; i < shape.n1(); ++i)
      X.col(i + k) += Y.block(i * s, k, s, 1);
  return X;
}

CMatrix apply_inverse_weights(const CMatrix& X, const HankelShape& shape) {
  require_signal(X, shape, "apply_inverse_weights");
  const MultiplicityWeights w = multiplicities(shape);
  CMatrix out(X.rows(), X.cols());
  for (Index j = 0; j < X.cols(); ++j)
    out.col(j) = X.col(j) / static_cast<double>(w[j]);
  return out;
}

CMatrix hankel_pinv(const CMatrix& Y, const HankelShape& shape) {
  require_lifted(Y, shape, "hankel_pinv");
  return apply_inverse_weights(hankel_adjoint(Y, shape), shape);
}

CMatrix measure_adjoint(const CVector& y, const CMatrix& B) {
  if (y.size() != B.rows())
    throw ShapeError("measure_adjoint: y has length " +
                     std::to_string(y.size()) + " but B has " +
                     std::to_string(B.rows()) + " rows");
  // Column j = y_j * b_j where b_j is row j of B (as a column vector).
  return B.transpose() * y.asDiagonal();
}

CMatrix weighted_lift_of_adjoint(const CVector& z, const CMatrix& B,
                                 const HankelShape& shape) {
  if (z.size() != shape.n() || B.cols() != shape.s())
    throw ShapeError("weighted_lift_of_adjoint: z or B disagree with shape");
  return hankel_lift(apply_inverse_weights(measure_adjoint(z, B), shape),
                     shape);
}

CMatrix fast_factor_adjoint(const CMatrix& L, const CMatrix& R,
                            const HankelShape& shape) {
  const Index s = shape.s(), n1 = shape.n1(), n2 = shape.n2();
  if (L.rows() != shape.lifted_rows() || R.rows() != n2 ||
      L.cols() != R.cols())
    throw ShapeError("fast_factor_adjoint: factors " + dims(L) + " and " +
                     dims(R) + " disagree with shape");
  const Index r = L.cols();
  const Index len = detail::fft_length(shape.n());
  const detail::Fft fft(len);

  CMatrix buf(len, 1);
  CMatrix right_hat(len, r);
  for (Index q = 0; q < r; ++q) {
    buf.setZero();
    buf.col(0).head(n2) = R.col(q).conjugate();
    fft.forward(buf.data(), right_hat.col(q).data());
  }

  // Column p of `acc` holds sum_q FFT(L[p::s, q]) .* FFT(conj R[:, q]).
  CMatrix acc = CMatrix::Zero(len, s);
  CMatrix left_hat(len, 1);
  for (Index p = 0; p < s; ++p) {
    for (Index q = 0; q < r; ++q) {
      buf.setZero();
      for (Index i = 0; i < n1; ++i) buf(i, 0) = L(i * s + p, q);
      fft.forward(buf.data(), left_hat.data());
      acc.col(p).array() += left_hat.col(0).array() * right_hat.col(q).array();
    }
  }

  CMatrix out(s, shape.n());
  const double scale = 1.0 / static_cast<double>(len);
  for (Index p = 0; p < s; ++p) {
    fft.inverse(acc.col(p).data(), buf.data());
    out.row(p) = buf.col(0).head(shape.n()).transpose() * scale;
  }
  return out;
}

CMatrix fast_lift_times_factor(const CMatrix& X, const CMatrix& R,
                               const HankelShape& shape) {
  require_signal(X, shape, "fast_lift_times_factor");
  const Index s = shape.s(), n1 = shape.n1(), n2 = shape.n2();
  if (R.rows() != n2)
    throw ShapeError("fast_lift_times_factor: R is " + dims(R) +
                     ", expected " + std::to_string(n2) + " rows");
  const Index r = R.cols();
  const Index len = detail::fft_length(shape.n());
  const detail::Fft fft(len);

  CMatrix buf(len, 1);
  CMatrix signal_hat(len, s);
  for (Index p = 0; p < s; ++p) {
    buf.setZero();
    buf.col(0).head(shape.n()) = X.row(p).transpose();
    fft.forward(buf.data(), signal_hat.col(p).data());
  }

  // Correlation with R is convolution with R reversed; entry i of block row
  // p lands at index i + n2 - 1 of the cyclic result, which never aliases
  // because len >= n.
  CMatrix out(shape.lifted_rows(), r);
  CMatrix factor_hat(len, 1), prod(len, 1);
  const double scale = 1.0 / static_cast<double>(len);
  for (Index q = 0; q < r; ++q) {
    buf.setZero();
    buf.col(0).head(n2) = R.col(q).reverse();
    fft.forward(buf.data(), factor_hat.data());
    for (Index p = 0; p < s; ++p) {
      prod.col(0) = signal_hat.col(p).cwiseProduct(factor_hat.col(0));
      fft.inverse(prod.data(), buf.data());
      for (Index i = 0; i < n1; ++i)
        out(i * s + p, q) = buf(i + n2 - 1, 0) * scale;
    }
  }
  return out;
}

CMatrix fast_lift_adjoint_times_factor(const CMatrix& X, const CMatrix& L,
                                       const HankelShape& shape) {
  require_signal(X, shape, "fast_lift_adjoint_times_factor");
  const Index s = shape.s(), n1 = shape.n1(), n2 = shape.n2();
  if (L.rows() != shape.lifted_rows())
    throw ShapeError("fast_lift_adjoint_times_factor: L is " + dims(L) +
                     ", expected " + std::to_string(shape.lifted_rows()) +
                     " rows");
  const Index r = L.cols();
  const Index len = detail::fft_length(shape.n());
  const detail::Fft fft(len);

  CMatrix buf(len, 1);
  CMatrix signal_hat(len, s);
  for (Index p = 0; p < s; ++p) {
    buf.setZero();
    buf.col(0).head(shape.n()) = X.row(p).adjoint();
    fft.forward(buf.data(), signal_hat.col(p).data());
  }

  CMatrix out(n2, r);
  CMatrix factor_hat(len, 1), acc(len, 1);
  const double scale = 1.0 / static_cast<double>(len);
  for (Index q = 0; q < r; ++q) {
    acc.setZero();
    for (Index p = 0; p < s; ++p) {
      buf.setZero();
      for (Index i = 0; i < n1; ++i) buf(i, 0) = L((n1 - 1 - i) * s + p, q);
      fft.forward(buf.data(), factor_hat.data());
      acc.col(0).array() +=
          signal_hat.col(p).array() * factor_hat.col(0).array();
    }
    fft.inverse(acc.data(), buf.data());
    for (Index k = 0; k < n2; ++k) out(k, q) = buf(k + n1 - 1, 0) * scale;
  }
  return out;
}

}  // namespace vhl
