// src/core/stft.cc

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

#include "core/stft.h"

#include <cmath>

#include "core/common.h"

namespace sepremix {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Stft::Stft(size_t frame_size, size_t hop)
    : frame_size_(frame_size), hop_(hop), fft_(frame_size) {
  Require(hop * 2 == frame_size, StatusCode::kInvalidArgument,
          "WOLA setup expects hop = frame_size / 2");
  window_.resize(frame_size);
  for (size_t n = 0; n < frame_size; ++n) {
    // sqrt of the periodic Hann window; analysis * synthesis sums to one.
    const double h = 0.5 * (1.0 - std::cos(2.0 * kPi * n / frame_size));
    window_[n] = std::sqrt(h);
  }
}

std::vector<std::vector<std::complex<double>>> Stft::Analyze(
    const std::vector<float>& signal) const {
  const size_t n = frame_size_;
  const size_t lead = n / 2;
  const size_t len = signal.size();
  const size_t frames = (lead + len) / hop_ + 2;

  std::vector<std::vector<std::complex<double>>> out;
  out.reserve(frames);
  std::vector<double> frame(n);
  for (size_t f = 0; f < frames; ++f) {
    // Frame f starts at padded index f*hop; original sample i sits at
    // padded index i + lead.
    const long long start = static_cast<long long>(f * hop_) - static_cast<long long>(lead);
    for (size_t k = 0; k < n; ++k) {
      const long long idx = start + static_cast<long long>(k);
      const double v = (idx >= 0 && idx < static_cast<long long>(len))
                           ? static_cast<double>(signal[idx])
                           : 0.0;
      frame[k] = v * window_[k];
    }
    out.push_back(fft_.ForwardReal(frame));
  }
  return out;
}

std::vector<float> Stft::Synthesize(
    const std::vector<std::vector<std::complex<double>>>& frames,
    size_t length) const {
  const size_t n = frame_size_;
  const size_t lead = n / 2;
  std::vector<double> acc(length + 2 * n, 0.0);
  for (size_t f = 0; f < frames.size(); ++f) {
    const std::vector<double> t = fft_.InverseReal(frames[f]);
    const long long start = static_cast<long long>(f * hop_) - static_cast<long long>(lead);
    for (size_t k = 0; k < n; ++k) {
      const long long idx = start + static_cast<long long>(k);
      if (idx >= 0 && idx < static_cast<long long>(acc.size()))
        acc[idx] += t[k] * window_[k];
    }
  }
  std::vector<float> out(length);
  for (size_t i = 0; i < length; ++i) out[i] = static_cast<float>(acc[i]);
  return out;
}

}  // namespace sepremix
