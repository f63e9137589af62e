// src/core/butterworth.cc

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

#include "core/butterworth.h"

#include <cmath>

#include "core/common.h"

namespace sepremix {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ButterworthLowpass::ButterworthLowpass(int order, double cutoff_hz,
                                       double sample_rate_hz)
    : sample_rate_(sample_rate_hz) {
  Require(order >= 1, StatusCode::kInvalidArgument, "filter order must be >= 1");
  Require(cutoff_hz > 0 && cutoff_hz < sample_rate_hz / 2,
          StatusCode::kInvalidArgument, "cutoff must lie below Nyquist");

  const double k = 2.0 * sample_rate_hz;
  const double wc = k * std::tan(kPi * cutoff_hz / sample_rate_hz);  // prewarped

  // Conjugate analog pole pairs of the Butterworth prototype.
  for (int i = 0; i < order / 2; ++i) {
    const double theta = kPi * (2.0 * i + 1.0) / (2.0 * order) + kPi / 2.0;
    const double re = wc * std::cos(theta);  // negative
    // Analog section: wc^2 / (s^2 - 2*re*s + wc^2), bilinear-transformed.
    const double a1s = -2.0 * re;
    const double a0s = wc * wc;
    const double d0 = k * k + a1s * k + a0s;
    Biquad q;
    q.b0 = a0s / d0;
    q.b1 = 2.0 * a0s / d0;
    q.b2 = a0s / d0;
    q.a1 = (2.0 * a0s - 2.0 * k * k) / d0;
    q.a2 = (k * k - a1s * k + a0s) / d0;
    sections_.push_back(q);
  }
  if (order % 2 == 1) {
    // Remaining real pole: wc / (s + wc).
    const double d0 = k + wc;
    Biquad q;
    q.b0 = wc / d0;
    q.b1 = wc / d0;
    q.a1 = (wc - k) / d0;
    sections_.push_back(q);
  }
}

std::vector<float> ButterworthLowpass::Apply(
    const std::vector<float>& signal) const {
  std::vector<double> x(signal.begin(), signal.end());
  for (const Biquad& q : sections_) {
    double z1 = 0.0, z2 = 0.0;
    for (double& v : x) {
      const double in = v;
      const double out = q.b0 * in + z1;
      z1 = q.b1 * in - q.a1 * out + z2;
      z2 = q.b2 * in - q.a2 * out;
      v = out;
    }
  }
  std::vector<float> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = static_cast<float>(x[i]);
  return out;
}

double ButterworthLowpass::MagnitudeAt(double f_hz) const {
  const std::complex<double> z_inv =
      std::exp(std::complex<double>(0.0, -2.0 * kPi * f_hz / sample_rate_));
  std::complex<double> h = 1.0;
  for (const Biquad& q : sections_) {
    const std::complex<double> num = q.b0 + q.b1 * z_inv + q.b2 * z_inv * z_inv;
    const std::complex<double> den = 1.0 + q.a1 * z_inv + q.a2 * z_inv * z_inv;
    h *= num / den;
  }
  return std::abs(h);
}

}  // namespace sepremix
