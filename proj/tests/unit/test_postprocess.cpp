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

#include <Eigen/SVD>
#include <random>
#include <vector>

#include "support/oracles.hpp"
#include "vhl/model.hpp"
#include "vhl/postprocess.hpp"

namespace vhl {
namespace {

CMatrix right_subspace(const CMatrix& X, const HankelShape& shape, Index r) {
  Eigen::JacobiSVD<CMatrix> svd(oracle::lift(X, shape.n1()), Eigen::ComputeThinV);
  return svd.matrixV().leftCols(r);
}

TEST(MusicNullEnergy, MatchesOracleAndVanishesOnSteering) {
  const PointSourceModel m = generate_model(32, 2, 3, true, 3);
  const CMatrix X = synthesize_signal(m, 32);
  const HankelShape shape = HankelShape::balanced(32, 2);
  const CMatrix V = right_subspace(X, shape, 3);
  for (double tau : {0.0, 0.11, 0.5, 0.93})
    EXPECT_NEAR(1.0 / music_null_energy(V, tau), oracle::music_value(V, tau),
                1e-9 * oracle::music_value(V, tau));
  for (double tau : m.locations) EXPECT_LT(music_null_energy(V, tau), 1e-20);
}

TEST(MusicNullEnergy, EmptySubspaceGivesUnitEnergy) {
  EXPECT_NEAR(music_null_energy(CMatrix::Zero(9, 1), 0.3), 1.0, 1e-14);
}

TEST(MusicLocations, SingleSpikeIsFoundExactly) {
  PointSourceModel m;
  m.locations = {0.3125};
  m.amplitudes = {Complex(2.0, 0.0)};
  m.coefficients = {CVector::Ones(1)};
  const HankelShape shape = HankelShape::balanced(16, 1);
  const MusicSpectrum spec =
      music_locations(synthesize_signal(m, 16), 1, shape, 64);
  ASSERT_EQ(spec.peaks.size(), 1u);
  EXPECT_FALSE(spec.degraded);
  EXPECT_NEAR(spec.peaks[0].location, 0.3125, 1e-9);
  EXPECT_EQ(spec.grid.size(), 64u);
  EXPECT_EQ(spec.grid[1], 1.0 / 64);
}

TEST(MusicLocations, OffGridSpikesRecoveredFromCleanSignal) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PointSourceModel m = generate_model(64, 2, 3, true, seed);
    const HankelShape shape = HankelShape::balanced(64, 2);
    const MusicSpectrum spec =
        music_locations(synthesize_signal(m, 64), 3, shape);
    ASSERT_EQ(spec.peaks.size(), 3u);
    std::vector<double> est;
    for (const MusicPeak& p : spec.peaks) est.push_back(p.location);
    EXPECT_LT(match_locations(m.locations, est).max_distance, 1e-6);
    for (size_t k = 1; k < est.size(); ++k) EXPECT_LT(est[k - 1], est[k]);
  }
}

TEST(MusicLocations, GridValuesMatchBruteForceScan) {
  const PointSourceModel m = generate_model(24, 1, 2, true, 12);
  const CMatrix X = synthesize_signal(m, 24);
  const HankelShape shape = HankelShape::balanced(24, 1);
  const MusicSpectrum spec = music_locations(X, 2, shape, 128);
  const CMatrix V = right_subspace(X, shape, 2);
  for (size_t k = 0; k < spec.grid.size(); k += 7) {
    const double want = oracle::music_value(V, spec.grid[k]);
    EXPECT_NEAR(spec.values[k], want, 1e-6 * want);
  }
  for (const MusicPeak& p : spec.peaks) EXPECT_GE(p.value, p.grid_value);
}

TEST(MusicLocations, RejectsBadArguments) {
  const HankelShape shape = HankelShape::balanced(8, 1);
  EXPECT_THROW(music_locations(CMatrix::Zero(1, 8), 1, shape),
               std::invalid_argument);
  EXPECT_THROW(music_locations(CMatrix::Ones(1, 8), 0, shape),
               std::invalid_argument);
  EXPECT_THROW(music_locations(CMatrix::Ones(1, 8), shape.n2(), shape),
               std::invalid_argument);
  EXPECT_THROW(music_locations(CMatrix::Ones(2, 8), 1, shape), ShapeError);
}

TEST(RecoverWeights, ExactOnCleanMeasurements) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ProblemInstance inst = make_instance(64, 2, 2, true, seed);
    const PointSourceModel& m = inst.truth->model;
    const WeightEstimate est = recover_weights(inst.B, inst.y, m.locations);
    EXPECT_LT(est.residual, 1e-10);
    for (size_t k = 0; k < m.locations.size(); ++k) {
      const CVector want = m.amplitudes[k] * m.coefficients[k];
      EXPECT_LT((est.weights[k] - want).norm(), 1e-9 * want.norm());
      EXPECT_NEAR(std::abs(est.amplitudes[k]), std::abs(m.amplitudes[k]), 1e-9);
      EXPECT_NEAR(est.coefficients[k].norm(), 1.0, 1e-12);
    }
  }
}

TEST(RecoverWeights, ScalarSubspaceHandCase) {
  // s = 1, B = ones, one spike at 0: y = d * ones.
  const CVector y = CVector::Constant(4, Complex(0.0, 3.0));
  const std::vector<double> loc{0.0};
  const WeightEstimate est = recover_weights(CMatrix::Ones(4, 1), y, loc);
  EXPECT_NEAR(std::abs(est.weights[0][0] - Complex(0, 3)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(est.amplitudes[0] - Complex(0, 3)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(est.coefficients[0][0] - 1.0), 0.0, 1e-14);
}

TEST(RecoverWeights, CoincidentLocationsAreRejected) {
  const ProblemInstance inst = make_instance(32, 1, 1, false, 0);
  const std::vector<double> loc{0.2, 0.2};
  EXPECT_THROW(recover_weights(inst.B, inst.y, loc), NumericalError);
}

TEST(RecoverWeights, UnderdeterminedIsRejected) {
  const std::vector<double> loc{0.1, 0.6};
  EXPECT_THROW(recover_weights(CMatrix::Ones(3, 2), CVector::Zero(3), loc),
               std::invalid_argument);
}

TEST(MatchLocations, Examples) {
  const std::vector<double> truth{0.1, 0.5, 0.98};
  const std::vector<double> est{0.51, 0.005, 0.1};
  const LocationMatch m = match_locations(truth, est);
  EXPECT_EQ(m.assignment, (std::vector<Index>{2, 0, 1}));
  EXPECT_NEAR(m.max_distance, 0.025, 1e-12);
  EXPECT_EQ(match_locations({}, {}).max_distance, 0.0);
  EXPECT_THROW(match_locations(truth, std::vector<double>{0.1}),
               std::invalid_argument);
}

}  // namespace
}  // namespace vhl
