// src/core/remix.cc

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

#include "core/remix.h"

#include <algorithm>
#include <cmath>

#include "core/common.h"

namespace sepremix::remix {

GainMapping GainMapping::Preset(const std::string& name, double k_db) {
  if (name == "initial") return Initial(k_db);
  if (name == "refined") return Refined(k_db);
  Throw(StatusCode::kInvalidArgument, "unknown gain mapping preset: " + name);
}

RemixPlan MapGain(double q_hat, const GainMapping& mapping) {
  Require(q_hat >= 0.0 && q_hat <= 100.0, StatusCode::kInvalidArgument,
          "quality estimate out of [0, 100]");
  Require(mapping.g_min_db <= mapping.g_max_db, StatusCode::kInvalidArgument,
          "unordered gain clamp bounds");
  RemixPlan plan;
  plan.q_hat = q_hat;
  double g = mapping.slope * q_hat + mapping.intercept + mapping.k_db;
  if (mapping.clamp) g = std::clamp(g, mapping.g_min_db, mapping.g_max_db);
  plan.g_db = g;
  plan.gamma = std::pow(10.0, -g / 20.0);
  return plan;
}

AudioBuffer ApplyRemix(const AudioBuffer& mixture, const AudioBuffer& separated,
                       const RemixPlan& plan) {
  Require(mixture.channel_count() == separated.channel_count() &&
              mixture.length() == separated.length() &&
              mixture.sample_rate() == separated.sample_rate(),
          StatusCode::kFormatError, "mixture/separated signals misaligned");
  const int channels = mixture.channel_count();
  const int64_t n = mixture.length();
  const float gamma = static_cast<float>(plan.gamma);
  std::vector<std::vector<float>> out(channels, std::vector<float>(n));
  for (int c = 0; c < channels; ++c) {
    const auto& x = mixture.channel(c);
    const auto& s = separated.channel(c);
    auto& y = out[c];
    for (int64_t i = 0; i < n; ++i) {
      const float background = x[i] - s[i];
      y[i] = s[i] + gamma * background;
    }
  }
  return AudioBuffer(std::move(out), mixture.sample_rate());
}

GainMapping FitMapping(
    const std::vector<std::pair<double, double>>& q_gain_pairs) {
  Require(q_gain_pairs.size() >= 2, StatusCode::kInvalidArgument,
          "need at least two observations to fit a mapping");
  double sx = 0.0, sy = 0.0;
  for (const auto& [q, g] : q_gain_pairs) {
    sx += q;
    sy += g;
  }
  const double n = static_cast<double>(q_gain_pairs.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [q, g] : q_gain_pairs) {
    sxx += (q - mx) * (q - mx);
    sxy += (q - mx) * (g - my);
  }
  Require(sxx > 0.0, StatusCode::kInvalidArgument,
          "degenerate fit: all quality values identical");
  GainMapping m;
  m.slope = sxy / sxx;
  m.intercept = my - m.slope * mx;
  m.k_db = 0.0;
  return m;
}

}  // namespace sepremix::remix
