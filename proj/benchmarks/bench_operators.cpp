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


#include <benchmark/benchmark.h>

#include "vhl/model.hpp"
#include "vhl/operators.hpp"
#include "vhl/rng.hpp"
#include "vhl/solver.hpp"

namespace vhl {
namespace {

CMatrix noise(Index rows, Index cols, Rng& rng) {
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
  return m;
}

void BM_FactorAdjoint(benchmark::State& state) {
  const Index n = state.range(0), s = 4, r = 4;
  const HankelShape shape = HankelShape::balanced(n, s);
  Rng rng(1);
  const CMatrix L = noise(shape.lifted_rows(), r, rng);
  const CMatrix R = noise(shape.n2(), r, rng);
  for (auto _ : state) benchmark::DoNotOptimize(fast_factor_adjoint(L, R, shape));
  state.SetComplexityN(n);
}
BENCHMARK(BM_FactorAdjoint)->RangeMultiplier(2)->Range(64, 8192)->Complexity();

void BM_LiftTimesFactor(benchmark::State& state) {
  const Index n = state.range(0), s = 4, r = 4;
  const HankelShape shape = HankelShape::balanced(n, s);
  Rng rng(2);
  const CMatrix X = noise(s, n, rng);
  const CMatrix R = noise(shape.n2(), r, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(fast_lift_times_factor(X, R, shape));
  state.SetComplexityN(n);
}
BENCHMARK(BM_LiftTimesFactor)->RangeMultiplier(2)->Range(64, 8192)->Complexity();

void BM_LiftAdjointTimesFactor(benchmark::State& state) {
  const Index n = state.range(0), s = 4, r = 4;
  const HankelShape shape = HankelShape::balanced(n, s);
  Rng rng(3);
  const CMatrix X = noise(s, n, rng);
  const CMatrix L = noise(shape.lifted_rows(), r, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(fast_lift_adjoint_times_factor(X, L, shape));
  state.SetComplexityN(n);
}
BENCHMARK(BM_LiftAdjointTimesFactor)
    ->RangeMultiplier(2)
    ->Range(64, 8192)
    ->Complexity();

void BM_Gradient(benchmark::State& state) {
  const Index n = state.range(0), s = 4, r = 4;
  const HankelShape shape = HankelShape::balanced(n, s);
  const ProblemInstance inst = make_instance(n, s, r, true, 7);
  Rng rng(4);
  const FactorPair m{noise(shape.lifted_rows(), r, rng), noise(shape.n2(), r, rng)};
  for (auto _ : state) benchmark::DoNotOptimize(gradient(m, inst, shape));
  state.SetComplexityN(n);
}
BENCHMARK(BM_Gradient)->RangeMultiplier(2)->Range(64, 4096)->Complexity();

void BM_Initialize(benchmark::State& state) {
  const Index n = state.range(0), s = 4, r = 4;
  const HankelShape shape = HankelShape::balanced(n, s);
  const ProblemInstance inst = make_instance(n, s, r, true, 8);
  for (auto _ : state)
    benchmark::DoNotOptimize(initialize(inst, shape, r, 1.0 / 3.0));
}
BENCHMARK(BM_Initialize)->Arg(128)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace vhl

// The packaged benchmark_main archive is LTO bytecode tied to one compiler
// release, so the entry point lives here.
BENCHMARK_MAIN();
