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

// Monte Carlo experiments: single trials, success-probability grids over
// (s, r) and (n, s|r), and convergence traces.

#ifndef VHL_HARNESS_HPP_
#define VHL_HARNESS_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vhl/model.hpp"
#include "vhl/solver.hpp"
#include "vhl/types.hpp"

namespace vhl {

// A trial succeeds when ||X_T - X||_F / ||X||_F is at most this.
inline constexpr double kSuccessThreshold = 1e-3;

struct TrialParams {
  Index n = 0;
  Index s = 0;
  Index r = 0;
  bool separated = true;
  std::uint64_t seed = 0;
  SubspaceKind subspace = SubspaceKind::kIidDftRows;
};

struct TrialOutcome {
  TrialParams params;
  bool success = false;
  double rel_error = 0.0;
  int iterations = 0;
  double wall_time_ms = 0.0;
  StopReason stop = StopReason::kMaxIters;
  bool feasible = true;  // false when the cell's parameters admit no instance
};

// Generates, solves and scores one instance. Throws on invalid parameters
// (r < 1, s > n, rank beyond the lift, infeasible separation).
TrialOutcome run_trial(const TrialParams& params, const SolverConfig& config);

// Inclusive integer range a..b with a positive step.
struct IntRange {
  Index first = 1;
  Index last = 1;
  Index step = 1;

  std::vector<Index> values() const;
};

struct HarnessOptions {
  int trials = 20;
  std::uint64_t master_seed = 0;
  unsigned jobs = 1;
  bool separated = true;
  SubspaceKind subspace = SubspaceKind::kIidDftRows;
  SolverConfig solver;
};

struct PhaseCell {
  Index s = 0;
  Index r = 0;
  Index n = 0;
  int trials = 0;
  int successes = 0;
  double success_rate() const {
    return trials > 0 ? static_cast<double>(successes) / trials : 0.0;
  }
};

struct PhaseGrid {
  std::string kind;       // "sr", "ns" or "nr"
  std::string reference;  // reference curve, e.g. "r*s=20"
  std::vector<PhaseCell> cells;
  std::vector<TrialOutcome> trials;  // sorted by (cell, trial index)
};

// Seed for trial `trial` of cell (n, s, r).
std::uint64_t trial_seed(std::uint64_t master, Index n, Index s, Index r,
                         int trial);

// Success grid over (s, r) at fixed n, reference hyperbola r*s = 20.
PhaseGrid phase_transition_sr(Index n, const IntRange& s_range,
                              const IntRange& r_range,
                              const HarnessOptions& opts);

enum class FixedAxis { kRank, kSubspace };

// Success grid over (n, varying) with r (kRank) or s (kSubspace) held at
// `fixed_value`; reference line n = 2.5 * varying.
PhaseGrid phase_transition_n(FixedAxis fixed, Index fixed_value,
                             const IntRange& varying, const IntRange& n_range,
                             const HarnessOptions& opts);

struct ConvergenceTrace {
  Index n = 0, s = 0, r = 0;
  std::uint64_t seed = 0;
  StopReason stop = StopReason::kMaxIters;
  std::vector<double> log10_rel_error;  // per iteration, from 0
  std::vector<double> residuals;
};

// One separated instance per n, solved with truth tracking.
std::vector<ConvergenceTrace> convergence_study(
    const std::vector<Index>& n_list, Index s, Index r,
    const HarnessOptions& opts);

// Runs task(i) for i in [0, count) on `jobs` threads. Tasks must write only
// to their own slot.
void parallel_for(std::size_t count, unsigned jobs,
                  const std::function<void(std::size_t)>& task);

}  // namespace vhl

#endif  // VHL_HARNESS_HPP_
