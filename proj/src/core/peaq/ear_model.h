// src/core/peaq/ear_model.h

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

#ifndef SEPREMIX_CORE_PEAQ_EAR_MODEL_H_
#define SEPREMIX_CORE_PEAQ_EAR_MODEL_H_

#include <cstdint>
#include <vector>

#include "core/fft.h"

namespace sepremix::peaq {

// FFT-based peripheral ear model, basic variant: 2048-sample Hann frames at
// 50% overlap, quarter-Bark critical bands from 80 Hz to 18 kHz, outer/middle
// ear weighting, level-dependent frequency spreading and forward-masking time
// smearing. Scaling assumes digital full scale (+-1.0) plays back at
// playback_level_db SPL.
struct EarModelConfig {
  double playback_level_db = 92.0;
  // Activity threshold for the legacy data-boundary rule: sum of absolute
  // amplitudes over 5 consecutive samples, expressed in the 16-bit integer
  // domain.
  double boundary_threshold_16bit = 200.0;
  int boundary_run_samples = 5;
};

constexpr int kFrameLength = 2048;
constexpr int kFrameHop = 1024;
constexpr int kEarSampleRate = 48000;
constexpr int kBandCount = 109;

// Everything one frame of the model produces that downstream feature
// computations consume. Band-indexed vectors have kBandCount entries.
struct FrameAnalysis {
  std::vector<double> power_spectrum;        // 1025 bins, level-calibrated
  std::vector<double> unsmeared_excitation;  // after frequency spreading
  std::vector<double> excitation;            // after time smearing
  std::vector<double> modulation;            // modulation measure per band
  std::vector<double> loudness_avg;          // smoothed excitation^0.3
};

class FftEarModel {
 public:
  explicit FftEarModel(const EarModelConfig& config);

  // Per-signal filter memories; one State per signal under analysis.
  struct State {
    std::vector<double> smeared;        // forward-masking filter memory
    std::vector<double> mod_deriv;      // smoothed |d/dt E^0.3|
    std::vector<double> mod_average;    // smoothed E^0.3
    std::vector<double> prev_pow03;     // previous frame's E^0.3
  };
  State NewState() const;

  // frame points at kFrameLength mono samples in [-1, 1].
  void ProcessFrame(const float* frame, State* state, FrameAnalysis* out) const;

  int band_count() const { return kBandCount; }
  double band_center_hz(int band) const { return band_center_[band]; }
  double internal_noise(int band) const { return internal_noise_[band]; }
  const EarModelConfig& config() const { return config_; }

  static int64_t FrameCount(int64_t num_samples) {
    if (num_samples < kFrameLength) return 0;
    return (num_samples - kFrameLength) / kFrameHop + 1;
  }

 private:
  void GroupIntoBands(const std::vector<double>& spectrum,
                      std::vector<double>* bands) const;
  void Spread(const std::vector<double>& pitch, std::vector<double>* out) const;

  EarModelConfig config_;
  Fft fft_;
  std::vector<double> window_;         // Hann * sqrt(8/3)
  double level_scale_ = 0.0;           // full scale -> playback level
  std::vector<double> ear_weight_;     // outer/middle ear, power domain
  std::vector<double> band_lower_;     // Hz
  std::vector<double> band_upper_;
  std::vector<double> band_center_;
  std::vector<int> group_first_bin_;
  std::vector<std::vector<double>> group_weights_;
  std::vector<double> internal_noise_;
  std::vector<double> spread_lower_gain_;   // per quarter-Bark step, const
  std::vector<double> spread_norm_;         // 0 dB normalization per band
  std::vector<double> smear_alpha_;         // excitation time constants
  std::vector<double> mod_alpha_;           // modulation time constants
  std::vector<double> noise03_;             // internal_noise^0.3
};

}  // namespace sepremix::peaq

#endif  // SEPREMIX_CORE_PEAQ_EAR_MODEL_H_
