// src/core/peaq/ear_model.cc

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

#include "core/peaq/ear_model.h"

#include <algorithm>
#include <cmath>

#include "core/common.h"

namespace sepremix::peaq {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBarkStep = 0.25;
constexpr double kLowestFreq = 80.0;
constexpr double kHighestFreq = 18000.0;
constexpr double kEnergyFloor = 1e-12;
constexpr double kSpreadExponent = 0.4;
// Forward masking and modulation smoothing time constants.
constexpr double kTauMin = 0.008;
constexpr double kTauExcitation100 = 0.030;
constexpr double kTauModulation100 = 0.050;

double FreqToBark(double f) { return 7.0 * std::asinh(f / 650.0); }
double BarkToFreq(double z) { return 650.0 * std::sinh(z / 7.0); }

// Outer and middle ear transfer function, amplitude dB.
double EarWeightDb(double f_hz) {
  const double k = f_hz / 1000.0;
  return -2.184 * std::pow(k, -0.8) +
         6.5 * std::exp(-0.6 * (k - 3.3) * (k - 3.3)) -
         1e-3 * std::pow(k, 3.6);
}

double TimeConstantAlpha(double fc, double tau100) {
  const double tau = kTauMin + (100.0 / fc) * (tau100 - kTauMin);
  return std::exp(-static_cast<double>(kFrameHop) /
                  (static_cast<double>(kEarSampleRate) * tau));
}

}  // namespace

FftEarModel::FftEarModel(const EarModelConfig& config)
    : config_(config), fft_(kFrameLength) {
  Require(config.playback_level_db > 0, StatusCode::kInvalidArgument,
          "playback level must be positive dB SPL");

  // Hann window with power normalization.
  window_.resize(kFrameLength);
  const double wnorm = std::sqrt(8.0 / 3.0);
  for (int n = 0; n < kFrameLength; ++n)
    window_[n] = wnorm * 0.5 * (1.0 - std::cos(2.0 * kPi * n / (kFrameLength - 1)));

  // Full-scale bin-centered sine must peak at the playback level: its
  // spectral magnitude is A * sum(w) / 2, and spectra are divided by N.
  double window_sum = 0.0;
  for (double w : window_) window_sum += w;
  level_scale_ = std::pow(10.0, config.playback_level_db / 20.0) *
                 (2.0 * kFrameLength / window_sum);

  const int bins = kFrameLength / 2 + 1;
  const double bin_hz = static_cast<double>(kEarSampleRate) / kFrameLength;
  ear_weight_.resize(bins);
  ear_weight_[0] = 0.0;
  for (int k = 1; k < bins; ++k)
    ear_weight_[k] = std::pow(10.0, EarWeightDb(k * bin_hz) / 10.0);

  // Quarter-Bark band edges between 80 Hz and 18 kHz.
  const double z_lo = FreqToBark(kLowestFreq);
  const double z_hi = FreqToBark(kHighestFreq);
  const int count = static_cast<int>(std::ceil((z_hi - z_lo) / kBarkStep));
  Require(count == kBandCount, StatusCode::kInvalidArgument,
          "unexpected critical band count");
  band_lower_.resize(count);
  band_upper_.resize(count);
  band_center_.resize(count);
  for (int i = 0; i < count; ++i) {
    const double zl = z_lo + i * kBarkStep;
    const double zu = std::min(z_lo + (i + 1) * kBarkStep, z_hi);
    band_lower_[i] = BarkToFreq(zl);
    band_upper_[i] = BarkToFreq(zu);
    band_center_[i] = BarkToFreq(0.5 * (zl + zu));
  }

  // Fractional assignment of FFT bins (each covering bin_hz around its
  // center) to critical bands.
  group_first_bin_.resize(count);
  group_weights_.resize(count);
  for (int i = 0; i < count; ++i) {
    const double lo = band_lower_[i];
    const double hi = band_upper_[i];
    const int k_first = std::max(0, static_cast<int>(std::floor(lo / bin_hz + 0.5)));
    const int k_last = std::min(bins - 1, static_cast<int>(std::floor(hi / bin_hz + 0.5)));
    group_first_bin_[i] = k_first;
    auto& w = group_weights_[i];
    for (int k = k_first; k <= k_last; ++k) {
      const double bin_lo = k * bin_hz - 0.5 * bin_hz;
      const double bin_hi = k * bin_hz + 0.5 * bin_hz;
      const double overlap = std::min(hi, bin_hi) - std::max(lo, bin_lo);
      w.push_back(std::max(0.0, overlap) / bin_hz);
    }
  }

  internal_noise_.resize(count);
  noise03_.resize(count);
  for (int i = 0; i < count; ++i) {
    internal_noise_[i] =
        std::pow(10.0, 0.4 * 0.364 * std::pow(band_center_[i] / 1000.0, -0.8));
    noise03_[i] = std::pow(internal_noise_[i], 0.3);
  }

  // Constant lower spreading slope: 27 dB/Bark.
  spread_lower_gain_.assign(1, std::pow(10.0, -kBarkStep * 27.0 / 10.0));

  // Normalization of the spreading at 0 dB band level.
  spread_norm_.assign(count, 0.0);
  {
    std::vector<double> ones(count, 1.0);
    std::vector<double> acc(count, 0.0);
    const double dn = spread_lower_gain_[0];
    for (int j = 0; j < count; ++j) {
      const double su_db = 24.0 + 230.0 / band_center_[j];  // L = 0 dB
      const double up = std::pow(10.0, -kBarkStep * su_db / 10.0);
      const double denom = (1.0 - std::pow(dn, j + 1)) / (1.0 - dn) +
                           up * (1.0 - std::pow(up, count - 1 - j)) / (1.0 - up);
      const double base = std::pow(1.0 / denom, kSpreadExponent);
      const double dn04 = std::pow(dn, kSpreadExponent);
      const double up04 = std::pow(up, kSpreadExponent);
      double term = base;
      for (int i = j; i >= 0; --i) {
        acc[i] += term;
        term *= dn04;
      }
      term = base * up04;
      for (int i = j + 1; i < count; ++i) {
        acc[i] += term;
        term *= up04;
      }
    }
    for (int i = 0; i < count; ++i)
      spread_norm_[i] = std::pow(acc[i], 1.0 / kSpreadExponent);
  }

  smear_alpha_.resize(count);
  mod_alpha_.resize(count);
  for (int i = 0; i < count; ++i) {
    smear_alpha_[i] = TimeConstantAlpha(band_center_[i], kTauExcitation100);
    mod_alpha_[i] = TimeConstantAlpha(band_center_[i], kTauModulation100);
  }
}

FftEarModel::State FftEarModel::NewState() const {
  State s;
  s.smeared.assign(kBandCount, 0.0);
  s.mod_deriv.assign(kBandCount, 0.0);
  s.mod_average.assign(kBandCount, 0.0);
  s.prev_pow03.assign(kBandCount, 0.0);
  return s;
}

void FftEarModel::GroupIntoBands(const std::vector<double>& spectrum,
                                 std::vector<double>* bands) const {
  bands->assign(kBandCount, 0.0);
  for (int i = 0; i < kBandCount; ++i) {
    double e = 0.0;
    const auto& w = group_weights_[i];
    const int k0 = group_first_bin_[i];
    for (size_t k = 0; k < w.size(); ++k) e += w[k] * spectrum[k0 + k];
    (*bands)[i] = std::max(e, kEnergyFloor);
  }
}

void FftEarModel::Spread(const std::vector<double>& pitch,
                         std::vector<double>* out) const {
  const int count = kBandCount;
  const double dn = spread_lower_gain_[0];
  const double dn04 = std::pow(dn, kSpreadExponent);
  std::vector<double> acc(count, 0.0);
  for (int j = 0; j < count; ++j) {
    const double level_db = 10.0 * std::log10(pitch[j]);
    // Upper slope flattens with level and sharpens at low frequencies.
    double su_db = 24.0 + 230.0 / band_center_[j] - 0.2 * level_db;
    su_db = std::max(su_db, 1e-3);
    const double up = std::pow(10.0, -kBarkStep * su_db / 10.0);
    const double denom = (1.0 - std::pow(dn, j + 1)) / (1.0 - dn) +
                         up * (1.0 - std::pow(up, count - 1 - j)) / (1.0 - up);
    const double base = std::pow(pitch[j] / denom, kSpreadExponent);
    const double up04 = std::pow(up, kSpreadExponent);
    double term = base;
    for (int i = j; i >= 0; --i) {
      acc[i] += term;
      term *= dn04;
    }
    term = base * up04;
    for (int i = j + 1; i < count; ++i) {
      acc[i] += term;
      term *= up04;
    }
  }
  out->resize(count);
  for (int i = 0; i < count; ++i)
    (*out)[i] = std::pow(acc[i], 1.0 / kSpreadExponent) / spread_norm_[i];
}

void FftEarModel::ProcessFrame(const float* frame, State* state,
                               FrameAnalysis* out) const {
  const int bins = kFrameLength / 2 + 1;

  std::vector<double> windowed(kFrameLength);
  for (int n = 0; n < kFrameLength; ++n)
    windowed[n] = static_cast<double>(frame[n]) * window_[n] * level_scale_;
  const auto spectrum = fft_.ForwardReal(windowed);

  out->power_spectrum.resize(bins);
  const double inv_n = 1.0 / kFrameLength;
  for (int k = 0; k < bins; ++k) {
    const double m = std::abs(spectrum[k]) * inv_n;
    out->power_spectrum[k] = m * m;
  }

  std::vector<double> weighted(bins);
  for (int k = 0; k < bins; ++k)
    weighted[k] = out->power_spectrum[k] * ear_weight_[k];

  std::vector<double> pitch;
  GroupIntoBands(weighted, &pitch);
  for (int i = 0; i < kBandCount; ++i) pitch[i] += internal_noise_[i];

  Spread(pitch, &out->unsmeared_excitation);

  out->excitation.resize(kBandCount);
  out->modulation.resize(kBandCount);
  out->loudness_avg.resize(kBandCount);
  const double rate = static_cast<double>(kEarSampleRate) / kFrameHop;
  for (int i = 0; i < kBandCount; ++i) {
    const double es = out->unsmeared_excitation[i];

    const double a = smear_alpha_[i];
    state->smeared[i] = a * state->smeared[i] + (1.0 - a) * es;
    out->excitation[i] = std::max(state->smeared[i], es);

    const double am = mod_alpha_[i];
    const double p03 = std::pow(es, 0.3);
    state->mod_deriv[i] = am * state->mod_deriv[i] +
                          (1.0 - am) * rate * std::abs(p03 - state->prev_pow03[i]);
    state->mod_average[i] = am * state->mod_average[i] + (1.0 - am) * p03;
    state->prev_pow03[i] = p03;
    out->modulation[i] = state->mod_deriv[i] / (1.0 + state->mod_average[i] / 0.3);
    out->loudness_avg[i] = state->mod_average[i];
  }
}

}  // namespace sepremix::peaq
