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

#ifndef VHL_TYPES_HPP_
#define VHL_TYPES_HPP_

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace vhl {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Thrown when operand dimensions disagree with each other or with a shape.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a random instance cannot be drawn under the requested
// constraints (e.g. the separation condition is infeasible).
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown on numerically ill-posed inputs (rank-deficient systems, non-finite
// decompositions).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown by the file readers; the message carries line or field context.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = std::numbers::pi;

}  // namespace vhl

#endif  // VHL_TYPES_HPP_
