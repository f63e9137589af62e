// src/core/datagen/mixing.cc

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

#include "core/datagen/mixing.h"

#include <cmath>

#include "core/common.h"

namespace sepremix::datagen {

namespace {
constexpr int64_t kActivityBlock = 480;  // 10 ms at 48 kHz
}

MixResult MixAtSnr(const AudioBuffer& speech, const AudioBuffer& background,
                   double snr_db, double activity_floor_db) {
  Require(speech.length() == background.length() &&
              speech.channel_count() == background.channel_count() &&
              speech.sample_rate() == background.sample_rate(),
          StatusCode::kFormatError, "speech/background misaligned");

  // Active-speech mask over 10 ms blocks, pooled across channels.
  const int64_t n = speech.length();
  const double floor_power = std::pow(10.0, activity_floor_db / 10.0);
  std::vector<bool> active(static_cast<size_t>((n + kActivityBlock - 1) /
                                               kActivityBlock));
  int64_t active_samples = 0;
  for (size_t b = 0; b < active.size(); ++b) {
    const int64_t begin = static_cast<int64_t>(b) * kActivityBlock;
    const int64_t end = std::min(n, begin + kActivityBlock);
    double power = 0.0;
    for (int c = 0; c < speech.channel_count(); ++c) {
      const auto& ch = speech.channel(c);
      for (int64_t i = begin; i < end; ++i)
        power += static_cast<double>(ch[i]) * ch[i];
    }
    power /= static_cast<double>((end - begin) * speech.channel_count());
    active[b] = power > floor_power;
    if (active[b]) active_samples += end - begin;
  }
  Require(active_samples > 0, StatusCode::kInvalidArgument,
          "silent speech: SNR is undefined");

  double speech_power = 0.0, background_power = 0.0;
  for (size_t b = 0; b < active.size(); ++b) {
    if (!active[b]) continue;
    const int64_t begin = static_cast<int64_t>(b) * kActivityBlock;
    const int64_t end = std::min(n, begin + kActivityBlock);
    for (int c = 0; c < speech.channel_count(); ++c) {
      const auto& s = speech.channel(c);
      const auto& g = background.channel(c);
      for (int64_t i = begin; i < end; ++i) {
        speech_power += static_cast<double>(s[i]) * s[i];
        background_power += static_cast<double>(g[i]) * g[i];
      }
    }
  }
  Require(background_power > 0.0, StatusCode::kInvalidArgument,
          "silent background over the active region: SNR is undefined");

  const double scale =
      std::sqrt(speech_power / (background_power * std::pow(10.0, snr_db / 10.0)));

  MixResult out;
  out.scale = scale;
  std::vector<std::vector<float>> sb(speech.channel_count());
  std::vector<std::vector<float>> mix(speech.channel_count());
  for (int c = 0; c < speech.channel_count(); ++c) {
    const auto& s = speech.channel(c);
    const auto& g = background.channel(c);
    sb[c].resize(n);
    mix[c].resize(n);
    for (int64_t i = 0; i < n; ++i) {
      const float scaled = static_cast<float>(scale * static_cast<double>(g[i]));
      sb[c][i] = scaled;
      mix[c][i] = static_cast<float>(static_cast<double>(s[i]) +
                                     static_cast<double>(scaled));
    }
  }
  out.background = AudioBuffer(std::move(sb), speech.sample_rate());
  out.mixture = AudioBuffer(std::move(mix), speech.sample_rate());
  return out;
}

AudioBuffer RemixComponents(const AudioBuffer& target,
                            const AudioBuffer& background, double atten_db) {
  Require(target.length() == background.length() &&
              target.channel_count() == background.channel_count() &&
              target.sample_rate() == background.sample_rate(),
          StatusCode::kFormatError, "target/background misaligned");
  if (std::isinf(atten_db) && atten_db < 0) return target;
  const double factor = std::pow(10.0, atten_db / 20.0);
  std::vector<std::vector<float>> out(target.channel_count());
  for (int c = 0; c < target.channel_count(); ++c) {
    const auto& t = target.channel(c);
    const auto& g = background.channel(c);
    out[c].resize(t.size());
    for (size_t i = 0; i < t.size(); ++i)
      out[c][i] = static_cast<float>(static_cast<double>(t[i]) +
                                     factor * static_cast<double>(g[i]));
  }
  return AudioBuffer(std::move(out), target.sample_rate());
}

}  // namespace sepremix::datagen
