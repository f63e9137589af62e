// src/core/datagen/distortions.h

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

#ifndef SEPREMIX_CORE_DATAGEN_DISTORTIONS_H_
#define SEPREMIX_CORE_DATAGEN_DISTORTIONS_H_

#include <cstdint>
#include <string>

#include "core/audio_buffer.h"
#include "core/kv_config.h"
#include "core/rng.h"

namespace sepremix::datagen {

enum class DistortionKind {
  kMusicalNoise,
  kLowpass,
  kClipping,
  kTfBlur,
};

std::string DistortionKindName(DistortionKind kind);
DistortionKind DistortionKindFromName(const std::string& name);

// Parameters for one distortion instance. Defaults are the fixed strong
// settings; randomized specs draw from configured mild ranges.
struct DistortionSpec {
  DistortionKind kind = DistortionKind::kMusicalNoise;
  double musical_noise_strength = 0.9;  // fraction of suppressed bins
  int lowpass_order = 3;
  double lowpass_cutoff_hz = 1000.0;
  double clip_fraction = 0.5;           // threshold as fraction of peak
  double tf_time_ms = 50.0;
  double tf_freq_hz = 500.0;
  uint64_t seed = 0;                    // used by stochastic kinds
  bool randomized = false;

  std::string Describe() const;
};

// All distortions preserve length and sample rate and are pure functions of
// (input, spec).
AudioBuffer ApplyDistortion(const DistortionSpec& spec,
                            const AudioBuffer& signal);

// Short-time spectrum gated by a random binary mask; `strength` is the
// suppression probability per time-frequency cell.
AudioBuffer MusicalNoise(const AudioBuffer& signal, double strength,
                         uint64_t seed);

AudioBuffer Clip(const AudioBuffer& signal, double fraction);

// Magnitudes averaged over time_ms x freq_hz tiles, phase retained.
AudioBuffer ReduceTfResolution(const AudioBuffer& signal, double time_ms,
                               double freq_hz);

AudioBuffer LowpassFilter(const AudioBuffer& signal, int order,
                          double cutoff_hz);

// Per-kind uniform ranges whose mild end approaches transparency. Keys (all
// optional, defaults in brackets): rand_musical_noise_strength [0.1,0.5],
// rand_lowpass_cutoff_hz [3000,12000], rand_clip_fraction [0.7,0.95],
// rand_tf_time_ms [5,25], rand_tf_freq_hz [50,250].
DistortionSpec RandomizeDistortion(DistortionKind kind, const KvConfig& ranges,
                                   uint64_t seed);

}  // namespace sepremix::datagen

#endif  // SEPREMIX_CORE_DATAGEN_DISTORTIONS_H_
