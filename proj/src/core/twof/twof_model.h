// src/core/twof/twof_model.h

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

#ifndef SEPREMIX_CORE_TWOF_TWOF_MODEL_H_
#define SEPREMIX_CORE_TWOF_TWOF_MODEL_H_

#include <string>
#include <vector>

#include "core/audio_buffer.h"
#include "core/peaq/features.h"

namespace sepremix::twof {

// Feature-to-quality regression constants. Shipped as a data file so the
// constants can be revised without touching the engine:
//
//   score = constant
//         + adb_numerator / (1 + (adb_scale * ADB + adb_offset)^2)
//         + amd1_scale * AvgModDiff1 ^ amd1_exponent
//
// clamped to [score_min, score_max]. The form is non-increasing in both
// features over their valid (non-negative) range.
struct Coefficients {
  int version = 1;
  double constant = 70.0;
  double adb_numerator = 56.1345;
  double adb_scale = -0.28;
  double adb_offset = -0.8628;
  double amd1_scale = -3.6;
  double amd1_exponent = 0.5;
  double score_min = 0.0;
  double score_max = 100.0;

  static Coefficients Defaults() { return Coefficients(); }
  static Coefficients Load(const std::string& path);
  std::string Id() const;  // short fingerprint for report headers
};

double MapFeatures(const peaq::FeaturePair& features, const Coefficients& c);

// Item-level quality: per channel, 4 s segments at 50% overlap are scored
// independently and averaged; the item value is the mean over channels.
struct SegmentScore {
  int channel = 0;
  int64_t offset = 0;
  double score = 0.0;
  peaq::FeaturePair features;
};

struct QualityScore {
  double value = 0.0;
  std::vector<double> per_channel;
  std::vector<SegmentScore> per_segment;
};

QualityScore ScoreItem(const AudioBuffer& reference, const AudioBuffer& probe,
                       peaq::BoundaryMode mode,
                       const Coefficients& coeffs = Coefficients::Defaults(),
                       const peaq::EarModelConfig& ear = peaq::EarModelConfig());

}  // namespace sepremix::twof

#endif  // SEPREMIX_CORE_TWOF_TWOF_MODEL_H_
