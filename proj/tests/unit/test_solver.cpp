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


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "vhl/model.hpp"
#include "vhl/solver.hpp"

namespace vhl {
namespace {

FactorPair random_pair(const HankelShape& shape, Index r, std::mt19937_64& gen,
                       double scale = 1.0) {
  return {scale * oracle::random_matrix(shape.lifted_rows(), r, gen),
          scale * oracle::random_matrix(shape.n2(), r, gen)};
}

FactorPair along(const FactorPair& m, double h, const FactorPair& d) {
  FactorPair out = m;
  out += h * d;
  return out;
}

double rel(const CMatrix& a, const CMatrix& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

TEST(Objective, MatchesDenseOracleTermByTerm) {
  std::mt19937_64 gen(31);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ProblemInstance inst = make_instance(12, 2, 2, false, seed);
    const HankelShape shape = HankelShape::balanced(12, 2);
    const FactorPair m = random_pair(shape, 3, gen, 0.3);
    const ObjectiveTerms got = objective_terms(m, inst, shape);
    const oracle::DenseTerms want =
        oracle::objective(m.L, m.R, inst.B, inst.y, shape.n1());
    EXPECT_NEAR(got.data, want.data, 1e-9 * std::max(1.0, want.data));
    EXPECT_NEAR(got.structure, want.structure,
                1e-9 * std::max(1.0, want.structure));
    EXPECT_NEAR(got.balance, want.balance, 1e-9 * std::max(1.0, want.balance));
  }
}

TEST(Objective, ZeroFactorsGiveHalfMeasurementEnergy) {
  const ProblemInstance inst = make_instance(10, 2, 1, false, 3);
  const HankelShape shape = HankelShape::balanced(10, 2);
  const FactorPair m{CMatrix::Zero(shape.lifted_rows(), 1),
                     CMatrix::Zero(shape.n2(), 1)};
  EXPECT_NEAR(objective(m, inst, shape), 0.5 * inst.y.squaredNorm(), 1e-12);
}

TEST(Gradient, MatchesDenseOracleTermByTerm) {
  std::mt19937_64 gen(32);
  const ProblemInstance inst = make_instance(11, 3, 2, false, 8);
  for (Index n1 : {3, 6, 9}) {
    const HankelShape shape(11, 3, n1);
    const FactorPair m = random_pair(shape, 2, gen, 0.4);
    const FactorPair got = gradient(m, inst, shape);
    const oracle::DenseGradient want =
        oracle::gradient(m.L, m.R, inst.B, inst.y, n1);
    EXPECT_LT(rel(got.L, want.L()), 1e-9);
    EXPECT_LT(rel(got.R, want.R()), 1e-9);
  }
}

TEST(Gradient, BalanceTermAloneWhenDataFitsExactly) {
  // With L R^H = H(X) for a consistent X, only the balance term survives.
  const ProblemInstance inst = make_instance(10, 1, 1, false, 4);
  const HankelShape shape = HankelShape::balanced(10, 1);
  const FactorPair bal = balanced_factors(inst.truth->signal, shape, 1);
  const FactorPair m{2.0 * bal.L, 0.5 * bal.R};
  const FactorPair g = gradient(m, inst, shape);
  const CMatrix E = m.L.adjoint() * m.L - m.R.adjoint() * m.R;
  EXPECT_LT(rel(g.L, 0.25 * m.L * E), 1e-9);
  EXPECT_LT(rel(g.R, -0.25 * m.R * E), 1e-9);
}

TEST(Gradient, FiniteDifferenceAgreement) {
  std::mt19937_64 gen(33);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Index n = 16 + 4 * static_cast<Index>(seed);
    const ProblemInstance inst = make_instance(n, 2, 2, false, seed);
    const HankelShape shape = HankelShape::balanced(n, 2);
    const FactorPair m = random_pair(shape, 2, gen, 0.5);
    const FactorPair g = gradient(m, inst, shape);
    for (int k = 0; k < 5; ++k) {
      const FactorPair d = random_pair(shape, 2, gen);
      const double h = 1e-5;
      const double fd = (objective(along(m, h, d), inst, shape) -
                         objective(along(m, -h, d), inst, shape)) /
                        (2 * h);
      const double an = real_inner(g, d);
      EXPECT_NEAR(fd, an, 1e-5 * std::max(1.0, std::abs(an)));
    }
  }
}

TEST(Gradient, VanishesAtBalancedTruth) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ProblemInstance inst = make_instance(32, 2, 3, true, seed);
    const HankelShape shape = HankelShape::balanced(32, 2);
    const FactorPair m = balanced_factors(inst.truth->signal, shape, 3);
    const double sigma1 = m.L.col(0).squaredNorm();
    const FactorPair g = gradient(m, inst, shape);
    EXPECT_LE(std::sqrt(g.squared_norm()), 1e-9 * sigma1);
  }
}

TEST(Gradient, ShapeMismatchThrows) {
  const ProblemInstance inst = make_instance(10, 2, 1, false, 0);
  const HankelShape shape = HankelShape::balanced(10, 2);
  const FactorPair bad{CMatrix::Zero(3, 1), CMatrix::Zero(shape.n2(), 1)};
  EXPECT_THROW(gradient(bad, inst, shape), ShapeError);
}

TEST(Project, ScalesOnlyOverlongBlocksAndRows) {
  FeasibleSetParams p;
  p.mu = 1.0;
  p.sigma = 4.0;
  p.n = 4;
  p.s = 2;
  p.r = 1;  // bound = 1
  EXPECT_DOUBLE_EQ(p.bound(), 1.0);
  FactorPair m{CMatrix::Zero(4, 1), CMatrix::Zero(3, 1)};
  m.L << 3.0, 4.0, 0.3, 0.4;
  m.R << Complex(0, 2), 0.5, -1.0;
  const FactorPair out = project(m, p);
  EXPECT_NEAR(std::abs(out.L(0, 0) - 0.6), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out.L(1, 0) - 0.8), 0.0, 1e-15);
  EXPECT_EQ(out.L(2, 0), m.L(2, 0));
  EXPECT_EQ(out.L(3, 0), m.L(3, 0));
  EXPECT_NEAR(std::abs(out.R(0, 0) - Complex(0, 1)), 0.0, 1e-15);
  EXPECT_EQ(out.R(1, 0), m.R(1, 0));
  EXPECT_EQ(out.R(2, 0), m.R(2, 0));
  EXPECT_TRUE(is_feasible(out, p));
  EXPECT_FALSE(is_feasible(m, p));
}

TEST(Project, IdempotentAndContractive) {
  std::mt19937_64 gen(34);
  FeasibleSetParams p{0.5, 2.0, 12, 3, 2};
  const HankelShape shape = HankelShape::balanced(12, 3);
  for (int t = 0; t < 10; ++t) {
    const FactorPair m = random_pair(shape, 2, gen);
    const FactorPair once = project(m, p);
    const FactorPair twice = project(once, p);
    EXPECT_LT(std::sqrt((twice - once).squared_norm()), 1e-14);
    EXPECT_LE(once.squared_norm(), m.squared_norm() + 1e-12);
    const FactorPair z = project(random_pair(shape, 2, gen), p);
    EXPECT_LE((once - z).squared_norm(), (m - z).squared_norm() + 1e-9);
  }
}

TEST(Initialize, ZeroMeasurementsGiveZeroFactors) {
  ProblemInstance inst = make_instance(16, 2, 2, false, 1);
  inst.y.setZero();
  const HankelShape shape = HankelShape::balanced(16, 2);
  const Initialization init = initialize(inst, shape, 2, 1.0 / 3.0);
  EXPECT_EQ(init.factors.squared_norm(), 0.0);
  EXPECT_EQ(init.params.sigma, 0.0);
}

TEST(Initialize, SigmaAndMuFollowTheirDefinitions) {
  const ProblemInstance inst = make_instance(24, 2, 2, true, 5);
  const HankelShape shape = HankelShape::balanced(24, 2);
  const Initialization init = initialize(inst, shape, 2, 0.25);
  EXPECT_NEAR(init.params.sigma, init.svd.S[0] / 0.75, 1e-12);
  const RVector root = init.svd.S.cwiseSqrt();
  const CMatrix L = init.svd.U * root.asDiagonal();
  const CMatrix R = init.svd.V * root.asDiagonal();
  double peak = R.rowwise().squaredNorm().maxCoeff();
  for (Index l = 0; l < shape.n1(); ++l)
    peak = std::max(peak, L.middleRows(l * 2, 2).squaredNorm());
  EXPECT_NEAR(init.params.mu, 1.5 * 24.0 / (2.0 * init.params.sigma) * peak,
              1e-10 * init.params.mu);
  EXPECT_TRUE(is_feasible(init.factors, init.params));
}

TEST(Initialize, HonoursMuOverride) {
  const ProblemInstance inst = make_instance(24, 2, 2, true, 5);
  const HankelShape shape = HankelShape::balanced(24, 2);
  EXPECT_EQ(initialize(inst, shape, 2, 0.25, 7.0).params.mu, 7.0);
}

TEST(Initialize, RejectsRankOutOfRange) {
  const ProblemInstance inst = make_instance(8, 2, 1, false, 0);
  const HankelShape shape = HankelShape::balanced(8, 2);
  EXPECT_THROW(initialize(inst, shape, 0, 0.25), std::invalid_argument);
  EXPECT_THROW(initialize(inst, shape, shape.max_rank() + 1, 0.25),
               std::invalid_argument);
}

TEST(SolverConfig, Validation) {
  SolverConfig c;
  EXPECT_NO_THROW(c.validate());
  c.eps = 0.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.max_iters = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.step_policy = StepPolicy::kFixed;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.step_growth = 0.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Solve, ZeroMeasurementsConvergeImmediately) {
  ProblemInstance inst = make_instance(16, 2, 2, false, 1);
  inst.y.setZero();
  inst.truth.reset();
  const SolverReport rep =
      solve(inst, HankelShape::balanced(16, 2), 2, SolverConfig{});
  EXPECT_EQ(rep.stop, StopReason::kConverged);
  EXPECT_EQ(rep.iterations, 0);
  EXPECT_EQ(rep.residuals.front(), 0.0);
}

TEST(Solve, RecoversSeparatedTwoSpikeInstance) {
  const ProblemInstance inst = make_instance(64, 2, 2, true, 1234);
  const HankelShape shape = HankelShape::balanced(64, 2);
  const SolverReport rep = solve(inst, shape, 2, SolverConfig{});
  ASSERT_EQ(rep.stop, StopReason::kConverged);
  EXPECT_LE(rep.residuals.back(), 1e-5);
  EXPECT_LT(rep.rel_errors.back(), 1e-3);
  EXPECT_EQ(rep.residuals.size(), static_cast<size_t>(rep.iterations) + 1);
  EXPECT_EQ(rep.distances.size(), rep.residuals.size());
  EXPECT_EQ(rep.step_sizes.size(), static_cast<size_t>(rep.iterations));
  const CMatrix X = recover_signal(rep.factors, shape);
  EXPECT_NEAR((forward_measure(inst.B, X) - inst.y).norm(),
              rep.residuals.back(), 1e-9);
  EXPECT_TRUE(is_feasible(rep.factors, rep.params, 1e-9));
}

TEST(Solve, ObjectiveNeverIncreasesUnderBacktracking) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const ProblemInstance inst = make_instance(32, 2, 2, true, seed);
    SolverConfig c;
    c.max_iters = 300;
    const SolverReport rep = solve(inst, HankelShape::balanced(32, 2), 2, c);
    for (size_t t = 1; t < rep.objectives.size(); ++t)
      EXPECT_LE(rep.objectives[t], rep.objectives[t - 1] * (1 + 1e-12));
  }
}

TEST(Solve, DeterministicAcrossRuns) {
  const ProblemInstance inst = make_instance(32, 2, 2, true, 77);
  SolverConfig c;
  c.max_iters = 200;
  const HankelShape shape = HankelShape::balanced(32, 2);
  const SolverReport a = solve(inst, shape, 2, c);
  const SolverReport b = solve(inst, shape, 2, c);
  EXPECT_EQ(a.residuals, b.residuals);
  EXPECT_EQ(a.factors.L, b.factors.L);
}

TEST(Solve, WithoutTruthTracesAreEmpty) {
  ProblemInstance inst = make_instance(16, 1, 1, true, 2);
  inst.truth.reset();
  SolverConfig c;
  c.max_iters = 10;
  const SolverReport rep = solve(inst, HankelShape::balanced(16, 1), 1, c);
  EXPECT_TRUE(rep.distances.empty());
  EXPECT_TRUE(rep.rel_errors.empty());
}

TEST(Solve, FixedStepUsesGivenStep) {
  const ProblemInstance inst = make_instance(16, 2, 2, true, 2);
  SolverConfig c;
  c.step_policy = StepPolicy::kFixed;
  c.step_size = 1e-3;
  c.max_iters = 5;
  const SolverReport rep = solve(inst, HankelShape::balanced(16, 2), 2, c);
  ASSERT_FALSE(rep.step_sizes.empty());
  for (double eta : rep.step_sizes) EXPECT_EQ(eta, 1e-3);
}

TEST(RecoverSignal, InvertsBalancedFactorsOfALowRankLift) {
  const ProblemInstance inst = make_instance(20, 2, 3, true, 6);
  const HankelShape shape = HankelShape::balanced(20, 2);
  const FactorPair m = balanced_factors(inst.truth->signal, shape, 3);
  EXPECT_LT(rel(recover_signal(m, shape), inst.truth->signal), 1e-10);
}

TEST(TheoryStepSize, Formula) {
  EXPECT_DOUBLE_EQ(theory_step_size(1.0, 1.0, 1.0, 1.0, 1.0, 1.0), 1.0 / 4500);
  EXPECT_DOUBLE_EQ(theory_step_size(2.0, 1.0, 2.0, 1.0, 1.0, 2.0),
                   2.0 / (4500.0 * 4.0 * 4.0));
  EXPECT_THROW(theory_step_size(0.0, 1, 1, 1, 1, 1), std::invalid_argument);
}

TEST(StopReason, Names) {
  EXPECT_EQ(to_string(StopReason::kConverged), "converged");
  EXPECT_EQ(to_string(StopReason::kMaxIters), "max_iters");
  EXPECT_EQ(to_string(StopReason::kStalled), "stalled");
}

}  // namespace
}  // namespace vhl
