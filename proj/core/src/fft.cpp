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

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace vhl::detail {
namespace {

struct PlanCache {
  std::mutex mu;
  std::map<std::pair<Index, int>, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }

  fftw_plan get(Index size, int sign) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = plans.find({size, sign});
    if (it != plans.end()) return it->second;
    // The planner only inspects these buffers; FFTW_ESTIMATE does not
    // overwrite them.
    std::vector<Complex> in(size), out(size);
    fftw_plan plan = fftw_plan_dft_1d(
        static_cast<int>(size), reinterpret_cast<fftw_complex*>(in.data()),
        reinterpret_cast<fftw_complex*>(out.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw NumericalError("FFTW planning failed");
    plans.emplace(std::make_pair(size, sign), plan);
    return plan;
  }
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

Index fft_length(Index n) {
  Index len = 1;
  while (len < n) len <<= 1;
  return len;
}

Fft::Fft(Index size)
    : size_(size),
      forward_plan_(cache().get(size, FFTW_FORWARD)),
      inverse_plan_(cache().get(size, FFTW_BACKWARD)) {}

void Fft::forward(const Complex* in, Complex* out) const {
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_),
                   reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

void Fft::inverse(const Complex* in, Complex* out) const {
  fftw_execute_dft(static_cast<fftw_plan>(inverse_plan_),
                   reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace vhl::detail
