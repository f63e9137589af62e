// src/core/remix.h

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

#ifndef SEPREMIX_CORE_REMIX_H_
#define SEPREMIX_CORE_REMIX_H_

#include <string>
#include <vector>

#include "core/audio_buffer.h"

namespace sepremix::remix {

// Linear quality-to-gain mapping g = slope * q + intercept + k, clamped to
// [g_min, g_max] dB of background attenuation. Two calibrated presets: the
// initial fit and the more conservative refinement.
struct GainMapping {
  double slope = 0.45;
  double intercept = -12.67;
  double k_db = 0.0;
  double g_min_db = 4.0;
  double g_max_db = 26.0;
  bool clamp = true;  // tests may disable to exercise the identity path

  static GainMapping Initial(double k_db = 0.0) {
    GainMapping m;
    m.slope = 0.71;
    m.intercept = -22.28;
    m.k_db = k_db;
    return m;
  }
  static GainMapping Refined(double k_db = 0.0) {
    GainMapping m;
    m.slope = 0.45;
    m.intercept = -12.67;
    m.k_db = k_db;
    return m;
  }
  static GainMapping Preset(const std::string& name, double k_db = 0.0);
};

struct RemixPlan {
  double q_hat = 0.0;
  double g_db = 0.0;
  double gamma = 1.0;  // 10^(-g/20)
};

// q_hat must lie in [0, 100].
RemixPlan MapGain(double q_hat, const GainMapping& mapping);

// y = s_hat + gamma * (x - s_hat), per channel.
AudioBuffer ApplyRemix(const AudioBuffer& mixture, const AudioBuffer& separated,
                       const RemixPlan& plan);

// Least-squares fit of gain observations against quality estimates; needs
// at least two distinct q values.
GainMapping FitMapping(const std::vector<std::pair<double, double>>& q_gain_pairs);

}  // namespace sepremix::remix

#endif  // SEPREMIX_CORE_REMIX_H_
