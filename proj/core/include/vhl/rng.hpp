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

#ifndef VHL_RNG_HPP_
#define VHL_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

#include "vhl/types.hpp"

namespace vhl {

// Seedable generator built on std::mt19937_64. The engine sequence is fixed
// by the standard; the distributions below are written out explicitly so
// draws are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, bound), rejection-sampled to avoid modulo bias.
  std::uint64_t uniform_index(std::uint64_t bound);

  // Standard normal via Box-Muller (one variate per call).
  double normal();

  // Standard circularly-symmetric complex normal: E|z|^2 = 1.
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Counter-based seed derivation: hashes the master seed together with an
// ordered list of integer coordinates.
std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> coords);

}  // namespace vhl

#endif  // VHL_RNG_HPP_
