// src/core/stft.h

// Copyright 2026 The sepremix authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SEPREMIX_CORE_STFT_H_
#define SEPREMIX_CORE_STFT_H_

#include <complex>
#include <vector>

#include "core/fft.h"

namespace sepremix {

// WOLA short-time transform with a sqrt-Hann window on both analysis and
// synthesis. With hop = size/2 the identity round trip reconstructs the
// interior exactly; the processors below keep input length on output.
class Stft {
 public:
  Stft(size_t frame_size, size_t hop);

  size_t frame_size() const { return frame_size_; }
  size_t hop() const { return hop_; }
  size_t bins() const { return frame_size_ / 2 + 1; }

  // Pads frame_size/2 zeros at both ends so every sample gets full window
  // weight; frame f covers input samples [f*hop - frame_size/2, ...).
  std::vector<std::vector<std::complex<double>>> Analyze(
      const std::vector<float>& signal) const;

  // Inverse of Analyze for the given original length.
  std::vector<float> Synthesize(
      const std::vector<std::vector<std::complex<double>>>& frames,
      size_t length) const;

 private:
  size_t frame_size_;
  size_t hop_;
  std::vector<double> window_;
  Fft fft_;
};

}  // namespace sepremix

#endif  // SEPREMIX_CORE_STFT_H_
