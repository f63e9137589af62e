// src/core/datagen/distortions.cc

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

#include "core/datagen/distortions.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <sstream>

#include "core/butterworth.h"
#include "core/common.h"
#include "core/stft.h"

namespace sepremix::datagen {

namespace {

constexpr size_t kStftSize = 1024;
constexpr size_t kStftHop = 512;

AudioBuffer PerChannel(const AudioBuffer& in,
                       const std::function<std::vector<float>(
                           const std::vector<float>&)>& fn) {
  std::vector<std::vector<float>> out;
  out.reserve(in.channel_count());
  for (int c = 0; c < in.channel_count(); ++c) out.push_back(fn(in.channel(c)));
  return AudioBuffer(std::move(out), in.sample_rate());
}

double DrawUniform(Rng* rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(*rng);
}

std::pair<double, double> Range(const KvConfig& cfg, const std::string& key,
                                double lo, double hi) {
  const auto v = cfg.GetDoubleList(key, std::to_string(lo) + "," + std::to_string(hi));
  Require(v.size() == 2 && v[0] <= v[1], StatusCode::kFormatError,
          "range key '" + key + "' needs 'lo,hi'");
  return {v[0], v[1]};
}

}  // namespace

std::string DistortionKindName(DistortionKind kind) {
  switch (kind) {
    case DistortionKind::kMusicalNoise: return "musical_noise";
    case DistortionKind::kLowpass: return "lowpass";
    case DistortionKind::kClipping: return "clipping";
    case DistortionKind::kTfBlur: return "tf_blur";
  }
  return "?";
}

DistortionKind DistortionKindFromName(const std::string& name) {
  if (name == "musical_noise") return DistortionKind::kMusicalNoise;
  if (name == "lowpass") return DistortionKind::kLowpass;
  if (name == "clipping") return DistortionKind::kClipping;
  if (name == "tf_blur") return DistortionKind::kTfBlur;
  Throw(StatusCode::kInvalidArgument, "unknown distortion kind: " + name);
}

std::string DistortionSpec::Describe() const {
  std::ostringstream ss;
  ss << DistortionKindName(kind);
  switch (kind) {
    case DistortionKind::kMusicalNoise:
      ss << "(strength=" << musical_noise_strength << ")";
      break;
    case DistortionKind::kLowpass:
      ss << "(order=" << lowpass_order << ",cutoff=" << lowpass_cutoff_hz << ")";
      break;
    case DistortionKind::kClipping:
      ss << "(fraction=" << clip_fraction << ")";
      break;
    case DistortionKind::kTfBlur:
      ss << "(time_ms=" << tf_time_ms << ",freq_hz=" << tf_freq_hz << ")";
      break;
  }
  if (randomized) ss << "[randomized]";
  return ss.str();
}

AudioBuffer MusicalNoise(const AudioBuffer& signal, double strength,
                         uint64_t seed) {
  Require(strength >= 0.0 && strength <= 1.0, StatusCode::kInvalidArgument,
          "musical noise strength must be in [0, 1]");
  const Stft stft(kStftSize, kStftHop);
  Rng rng(Mix64(seed ^ 0xBADC0FFEE0DDF00Dull));
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  return PerChannel(signal, [&](const std::vector<float>& x) {
    auto frames = stft.Analyze(x);
    for (auto& frame : frames)
      for (auto& bin : frame)
        if (dist(rng) < strength) bin = 0.0;
    return stft.Synthesize(frames, x.size());
  });
}

AudioBuffer Clip(const AudioBuffer& signal, double fraction) {
  Require(fraction > 0.0 && fraction <= 1.0, StatusCode::kInvalidArgument,
          "clip fraction must be in (0, 1]");
  float peak = 0.0f;
  for (int c = 0; c < signal.channel_count(); ++c)
    for (float v : signal.channel(c)) peak = std::max(peak, std::abs(v));
  const float threshold = static_cast<float>(fraction) * peak;
  return PerChannel(signal, [&](const std::vector<float>& x) {
    std::vector<float> y(x.size());
    for (size_t i = 0; i < x.size(); ++i)
      y[i] = std::min(threshold, std::max(-threshold, x[i]));
    return y;
  });
}

AudioBuffer ReduceTfResolution(const AudioBuffer& signal, double time_ms,
                               double freq_hz) {
  Require(time_ms > 0 && freq_hz > 0, StatusCode::kInvalidArgument,
          "tile dimensions must be positive");
  const Stft stft(kStftSize, kStftHop);
  const double fs = signal.sample_rate();
  const double bin_hz = fs / kStftSize;
  const size_t tile_frames = std::max<size_t>(
      1, static_cast<size_t>(std::lround(time_ms * fs / 1000.0 / kStftHop)));
  const size_t tile_bins =
      std::max<size_t>(1, static_cast<size_t>(std::lround(freq_hz / bin_hz)));

  return PerChannel(signal, [&](const std::vector<float>& x) {
    auto frames = stft.Analyze(x);
    const size_t num_frames = frames.size();
    const size_t num_bins = stft.bins();
    for (size_t f0 = 0; f0 < num_frames; f0 += tile_frames) {
      const size_t f1 = std::min(num_frames, f0 + tile_frames);
      for (size_t k0 = 0; k0 < num_bins; k0 += tile_bins) {
        const size_t k1 = std::min(num_bins, k0 + tile_bins);
        double mag_sum = 0.0;
        for (size_t f = f0; f < f1; ++f)
          for (size_t k = k0; k < k1; ++k) mag_sum += std::abs(frames[f][k]);
        const double mean = mag_sum / static_cast<double>((f1 - f0) * (k1 - k0));
        for (size_t f = f0; f < f1; ++f) {
          for (size_t k = k0; k < k1; ++k) {
            const double mag = std::abs(frames[f][k]);
            if (mag > 0.0) {
              frames[f][k] *= mean / mag;
            } else {
              frames[f][k] = mean;  // zero phase for silent cells
            }
          }
        }
      }
    }
    return stft.Synthesize(frames, x.size());
  });
}

AudioBuffer LowpassFilter(const AudioBuffer& signal, int order,
                          double cutoff_hz) {
  const ButterworthLowpass filter(order, cutoff_hz, signal.sample_rate());
  return PerChannel(signal, [&](const std::vector<float>& x) {
    return filter.Apply(x);
  });
}

AudioBuffer ApplyDistortion(const DistortionSpec& spec,
                            const AudioBuffer& signal) {
  switch (spec.kind) {
    case DistortionKind::kMusicalNoise:
      return MusicalNoise(signal, spec.musical_noise_strength, spec.seed);
    case DistortionKind::kLowpass:
      return LowpassFilter(signal, spec.lowpass_order, spec.lowpass_cutoff_hz);
    case DistortionKind::kClipping:
      return Clip(signal, spec.clip_fraction);
    case DistortionKind::kTfBlur:
      return ReduceTfResolution(signal, spec.tf_time_ms, spec.tf_freq_hz);
  }
  Throw(StatusCode::kInvalidArgument, "unhandled distortion kind");
}

DistortionSpec RandomizeDistortion(DistortionKind kind, const KvConfig& ranges,
                                   uint64_t seed) {
  Rng rng(Mix64(seed ^ 0x5EEDD15701710Full));
  DistortionSpec spec;
  spec.kind = kind;
  spec.seed = Mix64(seed + 1);
  spec.randomized = true;
  switch (kind) {
    case DistortionKind::kMusicalNoise: {
      auto [lo, hi] = Range(ranges, "rand_musical_noise_strength", 0.1, 0.5);
      spec.musical_noise_strength = DrawUniform(&rng, lo, hi);
      break;
    }
    case DistortionKind::kLowpass: {
      auto [lo, hi] = Range(ranges, "rand_lowpass_cutoff_hz", 3000.0, 12000.0);
      spec.lowpass_cutoff_hz = DrawUniform(&rng, lo, hi);
      break;
    }
    case DistortionKind::kClipping: {
      auto [lo, hi] = Range(ranges, "rand_clip_fraction", 0.7, 0.95);
      spec.clip_fraction = DrawUniform(&rng, lo, hi);
      break;
    }
    case DistortionKind::kTfBlur: {
      auto [tlo, thi] = Range(ranges, "rand_tf_time_ms", 5.0, 25.0);
      auto [flo, fhi] = Range(ranges, "rand_tf_freq_hz", 50.0, 250.0);
      spec.tf_time_ms = DrawUniform(&rng, tlo, thi);
      spec.tf_freq_hz = DrawUniform(&rng, flo, fhi);
      break;
    }
  }
  return spec;
}

}  // namespace sepremix::datagen
