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

// The vectorized Hankel lift and the linear maps built around it.
//
// For X in C^{s x n} with columns x_0..x_{n-1}, H(X) is the (s*n1) x n2
// block-Hankel matrix whose s x 1 block (i, j) is x_{i+j}, n1 + n2 = n + 1.
// Rows i*s .. i*s+s-1 of H(X) form block row i. The measurement operator is
// A(X)_j = b_j^H x_j; all adjoints are taken under <A, B> = trace(A^H B).

#ifndef VHL_OPERATORS_HPP_
#define VHL_OPERATORS_HPP_

#include <algorithm>

#include "vhl/types.hpp"

namespace vhl {

class HankelShape {
 public:
  // Split with n1 = ceil(n / 2), which equals n / 2 for even n.
  static HankelShape balanced(Index n, Index s);

  HankelShape(Index n, Index s, Index n1);

  Index n() const { return n_; }
  Index s() const { return s_; }
  Index n1() const { return n1_; }
  Index n2() const { return n2_; }
  Index lifted_rows() const { return s_ * n1_; }
  Index lifted_cols() const { return n2_; }
  // Largest rank the lifted matrix can carry.
  Index max_rank() const { return std::min(lifted_rows(), n2_); }

  bool operator==(const HankelShape&) const = default;

 private:
  Index n_, s_, n1_, n2_;
};

// w_j = #{(i, k): i + k = j, 0 <= i < n1, 0 <= k < n2}.
using MultiplicityWeights = Eigen::Matrix<Index, Eigen::Dynamic, 1>;

MultiplicityWeights multiplicities(const HankelShape& shape);

CMatrix hankel_lift(const CMatrix& X, const HankelShape& shape);

// Column j = sum over i + k = j of block (i, k).
CMatrix hankel_adjoint(const CMatrix& Y, const HankelShape& shape);

// Column j = (1 / w_j) * sum over i + k = j of block (i, k); H^+ H = I.
CMatrix hankel_pinv(const CMatrix& Y, const HankelShape& shape);

// Scales column j by 1 / w_j (the operator D^{-2}).
CMatrix apply_inverse_weights(const CMatrix& X, const HankelShape& shape);

// Column j = y_j * b_j.
CMatrix measure_adjoint(const CVector& y, const CMatrix& B);

// H(D^{-2} A^*(z)), the adjoint of A H^+.
CMatrix weighted_lift_of_adjoint(const CVector& z, const CMatrix& B,
                                 const HankelShape& shape);

// H^*(L R^H) without forming L R^H: s*r length-n convolutions via FFT.
CMatrix fast_factor_adjoint(const CMatrix& L, const CMatrix& R,
                            const HankelShape& shape);

// H(X) R without forming H(X): FFT correlations, (s*n1) x r.
CMatrix fast_lift_times_factor(const CMatrix& X, const CMatrix& R,
                               const HankelShape& shape);

// H(X)^H L without forming H(X): FFT correlations, n2 x r.
CMatrix fast_lift_adjoint_times_factor(const CMatrix& X, const CMatrix& L,
                                       const HankelShape& shape);

}  // namespace vhl

#endif  // VHL_OPERATORS_HPP_
