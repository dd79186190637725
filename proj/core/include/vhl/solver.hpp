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

// Projected gradient descent on the factors of the vectorized Hankel lift.
//
// Minimizes over M = [L; R] in the feasible set
//
//   f(M) = 1/2 ||y - A H^+(L R^H)||^2
//        + 1/2 ||(I - H H^+)(L R^H)||_F^2
//        + 1/16 ||L^H L - R^H R||_F^2
//
// where every block L_l and every row of R is capped in norm by
// sqrt(mu * r * sigma / n). All products with the lifted matrix go through
// the FFT routines in operators.hpp; nothing of size (s*n1) x n2 is formed.

#ifndef VHL_SOLVER_HPP_
#define VHL_SOLVER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vhl/factor_pair.hpp"
#include "vhl/linalg.hpp"
#include "vhl/model.hpp"
#include "vhl/operators.hpp"
#include "vhl/types.hpp"

namespace vhl {

struct FeasibleSetParams {
  double mu = 0.0;
  double sigma = 0.0;
  Index n = 0;
  Index s = 1;  // rows per block of L
  Index r = 0;

  // sqrt(mu * r * sigma / n)
  double bound() const;
};

enum class StepPolicy { kFixed, kBacktracking };

struct SolverConfig {
  StepPolicy step_policy = StepPolicy::kBacktracking;
  double step_size = 0.0;  // used by kFixed only
  double eps = 1.0 / 3.0;  // sigma = sigma_1(init) / (1 - eps)
  int max_iters = 5000;
  double tol_residual = 1e-5;
  std::optional<double> mu_override;
  std::uint64_t seed = 0;  // randomized SVD sketch

  double armijo = 1e-4;
  int max_halvings = 30;
  // After a step accepted without halving, the next trial step is multiplied
  // by step_growth, up to max_step_scale times the initial step. 1 disables.
  double step_growth = 2.0;
  double max_step_scale = 16.0;
  int stall_window = 20;
  double stall_tolerance = 1e-14;
  // Record distance / relative-error traces when the instance carries truth.
  bool track_truth = true;

  void validate() const;
};

enum class StopReason { kConverged, kMaxIters, kStalled };

std::string to_string(StopReason reason);

struct SolverReport {
  int iterations = 0;
  std::vector<double> residuals;   // ||y - A(X_t)||_2, t = 0..iterations
  std::vector<double> objectives;  // f(M_t)
  std::vector<double> distances;   // dist(M_t, M_truth); empty without truth
  std::vector<double> rel_errors;  // ||X_t - X||_F / ||X||_F; same
  std::vector<double> step_sizes;  // accepted eta per iteration
  StopReason stop = StopReason::kMaxIters;
  FactorPair factors;
  FeasibleSetParams params;
  bool svd_converged = true;
};

// The three terms of the objective, evaluated through the fast products.
struct ObjectiveTerms {
  double data = 0.0;
  double structure = 0.0;
  double balance = 0.0;
  double total() const { return data + structure + balance; }
};

ObjectiveTerms objective_terms(const FactorPair& m,
                               const ProblemInstance& instance,
                               const HankelShape& shape);

double objective(const FactorPair& m, const ProblemInstance& instance,
                 const HankelShape& shape);

// Wirtinger gradient (grad_L f, grad_R f). The first-order change of f along
// a perturbation D is Re<grad f, D> with <A, B> = trace(A^H B).
FactorPair gradient(const FactorPair& m, const ProblemInstance& instance,
                    const HankelShape& shape);

// Rescales each over-long block of L (Frobenius) and row of R (Euclidean)
// to the bound; everything else is left untouched.
FactorPair project(const FactorPair& m, const FeasibleSetParams& params);

bool is_feasible(const FactorPair& m, const FeasibleSetParams& params,
                 double slack = 1e-12);

struct Initialization {
  FactorPair factors;
  FeasibleSetParams params;
  TruncatedSvd svd;
};

// Rank-r truncation of H(A^*(y)), square-root balanced factors, then the
// projection. sigma = sigma_1 / (1 - eps); mu from the override or from the
// unprojected factors' largest block/row norm inflated by 1.5.
Initialization initialize(const ProblemInstance& instance,
                          const HankelShape& shape, Index r, double eps,
                          std::optional<double> mu_override = std::nullopt,
                          std::uint64_t seed = 0);

inline constexpr double kMuInflation = 1.5;

SolverReport solve(const ProblemInstance& instance, const HankelShape& shape,
                   Index r, const SolverConfig& config);

// Same, starting from given factors and feasible set.
SolverReport solve_from(const ProblemInstance& instance,
                        const HankelShape& shape, FactorPair start,
                        const FeasibleSetParams& params,
                        const SolverConfig& config);

// H^+(L R^H).
CMatrix recover_signal(const FactorPair& m, const HankelShape& shape);

// sigma_r / (4500 (mu0 mu s r)^2 sigma^2).
double theory_step_size(double sigma_r, double mu0, double mu, double s,
                        double r, double sigma);

// U S^{1/2}, V S^{1/2} from the rank-r SVD of H(X).
FactorPair balanced_factors(const CMatrix& X, const HankelShape& shape,
                            Index r);

}  // namespace vhl

#endif  // VHL_SOLVER_HPP_
