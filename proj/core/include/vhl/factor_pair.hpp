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

#ifndef VHL_FACTOR_PAIR_HPP_
#define VHL_FACTOR_PAIR_HPP_

#include "vhl/types.hpp"

namespace vhl {

// Low-rank factors of a lifted matrix, L R^H. L is (s*n1) x r with s x r
// blocks L_l = L[l*s : (l+1)*s, :]; R is n2 x r.
struct FactorPair {
  CMatrix L;
  CMatrix R;

  Index rank() const { return L.cols(); }

  // M = [L; R].
  CMatrix stacked() const {
    CMatrix M(L.rows() + R.rows(), L.cols());
    M << L, R;
    return M;
  }

  double squared_norm() const { return L.squaredNorm() + R.squaredNorm(); }

  FactorPair& operator+=(const FactorPair& o) {
    L += o.L;
    R += o.R;
    return *this;
  }
};

inline FactorPair operator-(const FactorPair& a, const FactorPair& b) {
  return {a.L - b.L, a.R - b.R};
}

inline FactorPair operator*(double c, const FactorPair& a) {
  return {c * a.L, c * a.R};
}

// Re <a, b> with <A, B> = trace(A^H B), summed over both factors.
inline double real_inner(const FactorPair& a, const FactorPair& b) {
  return (a.L.conjugate().cwiseProduct(b.L).sum() +
          a.R.conjugate().cwiseProduct(b.R).sum())
      .real();
}

}  // namespace vhl

#endif  // VHL_FACTOR_PAIR_HPP_
