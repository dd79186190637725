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

#ifndef VHL_SRC_FFT_HPP_
#define VHL_SRC_FFT_HPP_

#include "vhl/types.hpp"

namespace vhl::detail {

// Smallest power of two >= n.
Index fft_length(Index n);

// Unnormalized out-of-place 1-D complex DFT of length `size`
// backed by FFTW. Plans are created once per (size, direction) under a lock
// and shared; execution is reentrant. Plans use FFTW_UNALIGNED so any
// std::complex<double> buffer (e.g. an Eigen column) may be passed.
class Fft {
 public:
  explicit Fft(Index size);

  Index size() const { return size_; }

  // out = DFT(in), exponent sign -1. `out` must not alias `in`.
  void forward(const Complex* in, Complex* out) const;
  // out = unnormalized inverse DFT(in), exponent sign +1.
  void inverse(const Complex* in, Complex* out) const;

 private:
  Index size_;
  void* forward_plan_;
  void* inverse_plan_;
};

}  // namespace vhl::detail

#endif  // VHL_SRC_FFT_HPP_
