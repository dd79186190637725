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

#include "vhl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vhl {
namespace {

void require_factors(const FactorPair& m, const HankelShape& shape,
                     const char* where) {
  if (m.L.rows() != shape.lifted_rows() || m.R.rows() != shape.n2() ||
      m.L.cols() != m.R.cols())
    throw ShapeError(std::string(where) + ": factors " +
                     std::to_string(m.L.rows()) + "x" +
                     std::to_string(m.L.cols()) + " and " +
                     std::to_string(m.R.rows()) + "x" +
                     std::to_string(m.R.cols()) +
                     " disagree with the Hankel shape");
}

void require_instance(const ProblemInstance& inst, const HankelShape& shape,
                      const char* where) {
  if (inst.B.rows() != shape.n() || inst.B.cols() != shape.s() ||
      inst.y.size() != shape.n())
    throw ShapeError(std::string(where) +
                     ": instance dimensions disagree with the Hankel shape");
}

RVector weights_as_real(const HankelShape& shape) {
  return multiplicities(shape).cast<double>();
}

CMatrix divide_columns(const CMatrix& X, const RVector& w) {
  return X * w.cwiseInverse().asDiagonal();
}

// Re trace(A B) for square A, B.
double real_trace_product(const CMatrix& A, const CMatrix& B) {
  return A.cwiseProduct(B.transpose()).sum().real();
}

// Cached quantities at one iterate.
struct State {
  FactorPair m;
  CMatrix Z;         // H^+(L R^H)
  CVector residual;  // A(Z) - y
  CMatrix LhL, RhR;  // Gram matrices
};

State evaluate(FactorPair m, const ProblemInstance& inst,
               const HankelShape& shape, const RVector& w) {
  State st;
  st.Z = divide_columns(fast_factor_adjoint(m.L, m.R, shape), w);
  st.residual = forward_measure(inst.B, st.Z) - inst.y;
  st.LhL = m.L.adjoint() * m.L;
  st.RhR = m.R.adjoint() * m.R;
  st.m = std::move(m);
  return st;
}

ObjectiveTerms terms_of(const State& st, const RVector& w) {
  ObjectiveTerms t;
  t.data = 0.5 * st.residual.squaredNorm();
  const double lifted_sq = real_trace_product(st.LhL, st.RhR);
  const double projected_sq =
      (st.Z.colwise().squaredNorm().transpose().cwiseProduct(w)).sum();
  t.structure = 0.5 * std::max(0.0, lifted_sq - projected_sq);
  t.balance = (st.LhL - st.RhR).squaredNorm() / 16.0;
  return t;
}

FactorPair gradient_of(const State& st, const ProblemInstance& inst,
                       const HankelShape& shape, const RVector& w) {
  // The data and structure terms share one lifted matrix:
  //   H D^{-2} A^*(res) + (I - H H^+)(L R^H) = H(V - Z) + L R^H,
  // with V = D^{-2} A^*(res).
  const CMatrix V = divide_columns(measure_adjoint(st.residual, inst.B), w);
  const CMatrix diff = V - st.Z;
  const CMatrix E = st.LhL - st.RhR;
  FactorPair g;
  g.L = fast_lift_times_factor(diff, st.m.R, shape) + st.m.L * st.RhR +
        0.25 * st.m.L * E;
  g.R = fast_lift_adjoint_times_factor(diff, st.m.L, shape) +
        st.m.R * st.LhL - 0.25 * st.m.R * E;
  return g;
}

// f(next) - f(cur), assembled from the factor increments so that the
// cancellation between ||L R^H||^2 and ||H H^+(L R^H)||^2 happens on small
// quantities only.
double objective_change(const State& cur, const FactorPair& next,
                        const ProblemInstance& inst, const HankelShape& shape,
                        const RVector& w) {
  const CMatrix dL = next.L - cur.m.L;
  const CMatrix dR = next.R - cur.m.R;
  // L' R'^H - L R^H = dL R'^H + L dR^H
  const CMatrix dZ = divide_columns(fast_factor_adjoint(dL, next.R, shape) +
                                        fast_factor_adjoint(cur.m.L, dR, shape),
                                    w);
  const CVector dres = forward_measure(inst.B, dZ);
  const double d_data =
      0.5 * dres.dot(2.0 * cur.residual + dres).real();

  const CMatrix dA = dL.adjoint() * next.L + cur.m.L.adjoint() * dL;
  const CMatrix dB = dR.adjoint() * next.R + cur.m.R.adjoint() * dR;
  const double d_lifted = real_trace_product(dA, cur.RhR + dB) +
                          real_trace_product(cur.LhL, dB);
  const double d_projected =
      (dZ.conjugate().cwiseProduct(2.0 * cur.Z + dZ))
          .colwise()
          .sum()
          .real()
          .transpose()
          .cwiseProduct(w)
          .sum();
  const double d_structure = 0.5 * (d_lifted - d_projected);

  const CMatrix E = cur.LhL - cur.RhR;
  const CMatrix dE = dA - dB;
  const double d_balance =
      dE.conjugate().cwiseProduct(2.0 * E + dE).sum().real() / 16.0;

  return d_data + d_structure + d_balance;
}

}  // namespace

double FeasibleSetParams::bound() const {
  if (n <= 0) return 0.0;
  return std::sqrt(mu * static_cast<double>(r) * sigma /
                   static_cast<double>(n));
}

void SolverConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(tol_residual > 0.0))
    throw std::invalid_argument("tol_residual must be positive");
  if (!(eps > 0.0 && eps <= 1.0 / 3.0))
    throw std::invalid_argument("eps must lie in (0, 1/3]");
  if (step_policy == StepPolicy::kFixed && !(step_size > 0.0))
    throw std::invalid_argument("fixed step policy needs step_size > 0");
  if (mu_override && !(*mu_override > 0.0))
    throw std::invalid_argument("mu override must be positive");
  if (!(step_growth >= 1.0) || !(max_step_scale >= 1.0))
    throw std::invalid_argument("step growth settings must be >= 1");
  if (max_halvings < 0 || stall_window < 1)
    throw std::invalid_argument("invalid line-search or stall settings");
}

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kConverged: return "converged";
    case StopReason::kMaxIters: return "max_iters";
    case StopReason::kStalled: return "stalled";
  }
  return "unknown";
}

ObjectiveTerms objective_terms(const FactorPair& m,
                               const ProblemInstance& instance,
                               const HankelShape& shape) {
  require_factors(m, shape, "objective");
  require_instance(instance, shape, "objective");
  const RVector w = weights_as_real(shape);
  return terms_of(evaluate(m, instance, shape, w), w);
}

double objective(const FactorPair& m, const ProblemInstance& instance,
                 const HankelShape& shape) {
  return objective_terms(m, instance, shape).total();
}

FactorPair gradient(const FactorPair& m, const ProblemInstance& instance,
                    const HankelShape& shape) {
  require_factors(m, shape, "gradient");
  require_instance(instance, shape, "gradient");
  const RVector w = weights_as_real(shape);
  return gradient_of(evaluate(m, instance, shape, w), instance, shape, w);
}

FactorPair project(const FactorPair& m, const FeasibleSetParams& params) {
  const Index s = params.s;
  if (s < 1 || m.L.rows() % s != 0 || m.L.cols() != m.R.cols())
    throw ShapeError("project: factor shapes disagree with block size s");
  const double bound = params.bound();
  const Index r = m.rank();
  FactorPair out = m;
  for (Index l = 0; l < m.L.rows() / s; ++l) {
    auto block = out.L.block(l * s, 0, s, r);
    const double norm = block.norm();
    if (norm > bound) block *= bound / norm;
  }
  for (Index j = 0; j < out.R.rows(); ++j) {
    const double norm = out.R.row(j).norm();
    if (norm > bound) out.R.row(j) *= bound / norm;
  }
  return out;
}

bool is_feasible(const FactorPair& m, const FeasibleSetParams& params,
                 double slack) {
  const double cap = params.bound() * (1.0 + slack);
  const Index s = params.s;
  for (Index l = 0; l < m.L.rows() / s; ++l)
    if (m.L.block(l * s, 0, s, m.rank()).norm() > cap) return false;
  for (Index j = 0; j < m.R.rows(); ++j)
    if (m.R.row(j).norm() > cap) return false;
  return true;
}

CMatrix recover_signal(const FactorPair& m, const HankelShape& shape) {
  require_factors(m, shape, "recover_signal");
  return apply_inverse_weights(fast_factor_adjoint(m.L, m.R, shape), shape);
}

double theory_step_size(double sigma_r, double mu0, double mu, double s,
                        double r, double sigma) {
  if (!(sigma_r > 0 && mu0 > 0 && mu > 0 && s > 0 && r > 0 && sigma > 0))
    throw std::invalid_argument("theory_step_size: inputs must be positive");
  const double c = mu0 * mu * s * r;
  return sigma_r / (4500.0 * c * c * sigma * sigma);
}

namespace {

MatrixOracle lift_oracle(const CMatrix& X, const HankelShape& shape) {
  MatrixOracle op;
  op.rows = shape.lifted_rows();
  op.cols = shape.lifted_cols();
  op.apply = [X, shape](const CMatrix& R) {
    return fast_lift_times_factor(X, R, shape);
  };
  op.apply_adjoint = [X, shape](const CMatrix& L) {
    return fast_lift_adjoint_times_factor(X, L, shape);
  };
  return op;
}

FactorPair factors_from_svd(const TruncatedSvd& svd) {
  const RVector root = svd.S.cwiseSqrt();
  return {svd.U * root.asDiagonal(), svd.V * root.asDiagonal()};
}

}  // namespace

FactorPair balanced_factors(const CMatrix& X, const HankelShape& shape,
                            Index r) {
  return factors_from_svd(truncated_svd(lift_oracle(X, shape), r, 0));
}

Initialization initialize(const ProblemInstance& instance,
                          const HankelShape& shape, Index r, double eps,
                          std::optional<double> mu_override,
                          std::uint64_t seed) {
  require_instance(instance, shape, "initialize");
  if (r < 1 || r > shape.max_rank())
    throw std::invalid_argument(
        "initialize: rank " + std::to_string(r) + " outside [1, " +
        std::to_string(shape.max_rank()) + "]");
  const CMatrix X0 = measure_adjoint(instance.y, instance.B);

  Initialization init;
  init.svd = truncated_svd(lift_oracle(X0, shape), r, seed);
  const FactorPair raw = factors_from_svd(init.svd);

  FeasibleSetParams& p = init.params;
  p.n = shape.n();
  p.s = shape.s();
  p.r = r;
  p.sigma = init.svd.S[0] / (1.0 - eps);
  if (mu_override) {
    p.mu = *mu_override;
  } else if (p.sigma > 0.0) {
    const Index s = shape.s();
    double peak = 0.0;
    for (Index l = 0; l < shape.n1(); ++l)
      peak = std::max(peak, raw.L.block(l * s, 0, s, r).squaredNorm());
    peak = std::max(peak, raw.R.rowwise().squaredNorm().maxCoeff());
    p.mu = kMuInflation * static_cast<double>(shape.n()) /
           (static_cast<double>(r) * p.sigma) * peak;
  } else {
    // y = 0: the factors are zero and the bound is zero regardless of mu.
    p.mu = 1.0;
  }
  init.factors = project(raw, p);
  return init;
}

SolverReport solve(const ProblemInstance& instance, const HankelShape& shape,
                   Index r, const SolverConfig& config) {
  config.validate();
  Initialization init =
      initialize(instance, shape, r, config.eps, config.mu_override,
                 config.seed);
  SolverReport report =
      solve_from(instance, shape, std::move(init.factors), init.params, config);
  report.svd_converged = init.svd.converged;
  return report;
}

SolverReport solve_from(const ProblemInstance& instance,
                        const HankelShape& shape, FactorPair start,
                        const FeasibleSetParams& params,
                        const SolverConfig& config) {
  config.validate();
  require_instance(instance, shape, "solve");
  require_factors(start, shape, "solve");
  const RVector w = weights_as_real(shape);
  const Index r = start.rank();

  const bool with_truth = config.track_truth && instance.truth.has_value();
  FactorPair truth_factors;
  double truth_norm = 1.0;
  bool with_distance = false;
  if (with_truth) {
    const CMatrix& X = instance.truth->signal;
    truth_norm = X.norm();
    if (instance.truth->model.order() == r && r <= shape.max_rank()) {
      truth_factors = balanced_factors(X, shape, r);
      with_distance = true;
    }
  }

  SolverReport report;
  report.params = params;
  State st = evaluate(std::move(start), instance, shape, w);
  // After the first evaluation the objective trace is advanced by the
  // increments certified in the line search, which are free of the
  // cancellation in the structure term.
  double f = terms_of(st, w).total();

  auto record = [&](double eta) {
    report.residuals.push_back(st.residual.norm());
    report.objectives.push_back(f);
    if (with_truth) {
      report.rel_errors.push_back((st.Z - instance.truth->signal).norm() /
                                  truth_norm);
      if (with_distance)
        report.distances.push_back(procrustes_distance(st.m, truth_factors));
    }
    if (eta >= 0.0) report.step_sizes.push_back(eta);
  };
  record(-1.0);

  double eta = config.step_policy == StepPolicy::kFixed
                   ? config.step_size
                   : (params.sigma > 0.0 ? 1.0 / (8.0 * params.sigma) : 1.0);
  const double eta_cap = eta * config.max_step_scale;
  int flat_run = 0;

  while (true) {
    if (report.residuals.back() <= config.tol_residual) {
      report.stop = StopReason::kConverged;
      break;
    }
    if (report.iterations >= config.max_iters) {
      report.stop = StopReason::kMaxIters;
      break;
    }

    const FactorPair g = gradient_of(st, instance, shape, w);
    const double g_sq = g.squared_norm();
    FactorPair next;
    double change = 0.0;
    bool accepted = false;
    bool grow = false;
    if (config.step_policy == StepPolicy::kFixed) {
      next = project(st.m - eta * g, params);
      change = objective_change(st, next, instance, shape, w);
      accepted = true;
    } else {
      double trial = eta;
      for (int h = 0; h <= config.max_halvings; ++h) {
        next = project(st.m - trial * g, params);
        change = objective_change(st, next, instance, shape, w);
        if (change <= -config.armijo * trial * g_sq) {
          accepted = true;
          eta = trial;
          grow = h == 0;
          break;
        }
        trial *= 0.5;
      }
    }
    if (!accepted) {
      report.stop = StopReason::kStalled;
      break;
    }

    const double previous = f;
    const double used = eta;
    if (grow) eta = std::min(eta * config.step_growth, eta_cap);
    st = evaluate(std::move(next), instance, shape, w);
    f += change;
    ++report.iterations;
    record(used);

    const double scale = std::max(std::fabs(previous),
                                  std::numeric_limits<double>::min());
    flat_run = (-change / scale < config.stall_tolerance) ? flat_run + 1 : 0;
    if (flat_run >= config.stall_window &&
        report.residuals.back() > config.tol_residual) {
      report.stop = StopReason::kStalled;
      break;
    }
  }
  report.factors = std::move(st.m);
  return report;
}

}  // namespace vhl
