// src/core/butterworth.h

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

#ifndef SEPREMIX_CORE_BUTTERWORTH_H_
#define SEPREMIX_CORE_BUTTERWORTH_H_

#include <complex>
#include <vector>

namespace sepremix {

// Second-order IIR section, direct form II transposed, double state.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;  // denominator, a0 normalized to 1
};

// Causal Butterworth low-pass as a cascade of biquads (plus one first-order
// section when the order is odd), designed by bilinear transform with
// prewarped cutoff.
class ButterworthLowpass {
 public:
  ButterworthLowpass(int order, double cutoff_hz, double sample_rate_hz);

  std::vector<float> Apply(const std::vector<float>& signal) const;

  // Magnitude response of the designed digital filter at f (Hz).
  double MagnitudeAt(double f_hz) const;

  const std::vector<Biquad>& sections() const { return sections_; }

 private:
  std::vector<Biquad> sections_;
  double sample_rate_;
};

}  // namespace sepremix

#endif  // SEPREMIX_CORE_BUTTERWORTH_H_
