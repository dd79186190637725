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

#include "vhl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "vhl/rng.hpp"

namespace vhl {
namespace {

struct CellSpec {
  Index n, s, r;
};

PhaseGrid run_grid(std::string kind, std::string reference,
                   const std::vector<CellSpec>& cells,
                   const HarnessOptions& opts) {
  if (opts.trials < 1)
    throw std::invalid_argument("phase grid: trials must be >= 1");
  PhaseGrid grid;
  grid.kind = std::move(kind);
  grid.reference = std::move(reference);

  const std::size_t per_cell = static_cast<std::size_t>(opts.trials);
  grid.trials.resize(cells.size() * per_cell);
  parallel_for(grid.trials.size(), opts.jobs, [&](std::size_t task) {
    const CellSpec& c = cells[task / per_cell];
    const int trial = static_cast<int>(task % per_cell);
    TrialParams p{c.n, c.s, c.r, opts.separated,
                  trial_seed(opts.master_seed, c.n, c.s, c.r, trial),
                  opts.subspace};
    try {
      grid.trials[task] = run_trial(p, opts.solver);
    } catch (const std::invalid_argument&) {
      grid.trials[task] = TrialOutcome{p, false, 1.0, 0, 0.0,
                                       StopReason::kMaxIters, false};
    } catch (const GenerationError&) {
      grid.trials[task] = TrialOutcome{p, false, 1.0, 0, 0.0,
                                       StopReason::kMaxIters, false};
    }
  });

  for (std::size_t k = 0; k < cells.size(); ++k) {
    PhaseCell cell{cells[k].s, cells[k].r, cells[k].n, opts.trials, 0};
    for (std::size_t t = 0; t < per_cell; ++t)
      if (grid.trials[k * per_cell + t].success) ++cell.successes;
    grid.cells.push_back(cell);
  }
  return grid;
}

}  // namespace

std::vector<Index> IntRange::values() const {
  if (step < 1) throw std::invalid_argument("range step must be >= 1");
  if (last < first) throw std::invalid_argument("range is empty");
  std::vector<Index> v;
  for (Index x = first; x <= last; x += step) v.push_back(x);
  return v;
}

std::uint64_t trial_seed(std::uint64_t master, Index n, Index s, Index r,
                         int trial) {
  return derive_seed(master, {static_cast<std::uint64_t>(n),
                              static_cast<std::uint64_t>(s),
                              static_cast<std::uint64_t>(r),
                              static_cast<std::uint64_t>(trial)});
}

TrialOutcome run_trial(const TrialParams& params, const SolverConfig& config) {
  if (params.n < 1 || params.s < 1 || params.r < 1)
    throw std::invalid_argument("run_trial: n, s, r must be >= 1");
  if (params.s > params.n)
    throw std::invalid_argument("run_trial: s exceeds n");
  const HankelShape shape = HankelShape::balanced(params.n, params.s);
  if (params.r > shape.max_rank())
    throw std::invalid_argument("run_trial: r exceeds the lifted rank bound");

  const auto start = std::chrono::steady_clock::now();
  const ProblemInstance inst = make_instance(params.n, params.s, params.r,
                                             params.separated, params.seed,
                                             params.subspace);
  SolverConfig cfg = config;
  cfg.track_truth = false;
  const SolverReport report = solve(inst, shape, params.r, cfg);
  const CMatrix X = recover_signal(report.factors, shape);
  const CMatrix& truth = inst.truth->signal;
  const auto stop = std::chrono::steady_clock::now();

  TrialOutcome out;
  out.params = params;
  out.rel_error = (X - truth).norm() / truth.norm();
  out.success = out.rel_error <= kSuccessThreshold;
  out.iterations = report.iterations;
  out.stop = report.stop;
  out.wall_time_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return out;
}

PhaseGrid phase_transition_sr(Index n, const IntRange& s_range,
                              const IntRange& r_range,
                              const HarnessOptions& opts) {
  std::vector<CellSpec> cells;
  for (Index s : s_range.values())
    for (Index r : r_range.values()) cells.push_back({n, s, r});
  return run_grid("sr", "r*s=20", cells, opts);
}

PhaseGrid phase_transition_n(FixedAxis fixed, Index fixed_value,
                             const IntRange& varying, const IntRange& n_range,
                             const HarnessOptions& opts) {
  std::vector<CellSpec> cells;
  for (Index n : n_range.values())
    for (Index v : varying.values())
      cells.push_back(fixed == FixedAxis::kRank ? CellSpec{n, v, fixed_value}
                                                : CellSpec{n, fixed_value, v});
  return fixed == FixedAxis::kRank ? run_grid("ns", "n=2.5*s", cells, opts)
                                   : run_grid("nr", "n=2.5*r", cells, opts);
}

std::vector<ConvergenceTrace> convergence_study(
    const std::vector<Index>& n_list, Index s, Index r,
    const HarnessOptions& opts) {
  std::vector<ConvergenceTrace> traces(n_list.size());
  parallel_for(n_list.size(), opts.jobs, [&](std::size_t k) {
    const Index n = n_list[k];
    const HankelShape shape = HankelShape::balanced(n, s);
    ConvergenceTrace& tr = traces[k];
    tr.n = n;
    tr.s = s;
    tr.r = r;
    tr.seed = trial_seed(opts.master_seed, n, s, r, 0);
    const ProblemInstance inst =
        make_instance(n, s, r, true, tr.seed, opts.subspace);
    SolverConfig cfg = opts.solver;
    cfg.track_truth = true;
    const SolverReport report = solve(inst, shape, r, cfg);
    tr.stop = report.stop;
    tr.residuals = report.residuals;
    for (double e : report.rel_errors) tr.log10_rel_error.push_back(std::log10(e));
  });
  return traces;
}

void parallel_for(std::size_t count, unsigned jobs,
                  const std::function<void(std::size_t)>& task) {
  const unsigned width = std::max(1u, std::min<unsigned>(
      jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (width == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < width; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace vhl
