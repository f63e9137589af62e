// src/core/peaq/features.h

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

#ifndef SEPREMIX_CORE_PEAQ_FEATURES_H_
#define SEPREMIX_CORE_PEAQ_FEATURES_H_

#include <cstdint>
#include <string>

#include "core/audio_buffer.h"
#include "core/peaq/ear_model.h"

namespace sepremix::peaq {

// Legacy behavior discards frames outside the interval where the reference
// signal is active; the adapted mode keeps every frame so that distortions
// against a silent reference still register.
enum class BoundaryMode {
  kEnabled,
  kDisabled,  // default operating mode
};

std::string BoundaryModeName(BoundaryMode mode);
BoundaryMode BoundaryModeFromName(const std::string& name);

// The two features feeding the quality regression: the average distorted
// block value from the detection-probability chain and the averaged
// modulation difference.
struct FeaturePair {
  double adb = 0.0;
  double avg_mod_diff_1 = 0.0;
  int64_t frames_used = 0;
  int64_t frames_total = 0;
};

// Active interval [begin, end) of a mono signal per the data-boundary rule;
// begin == end means no activity.
struct ActiveInterval {
  int64_t begin = 0;
  int64_t end = 0;
};
ActiveInterval FindDataBoundaries(const std::vector<float>& samples,
                                  const EarModelConfig& config);

// Reference and probe must be mono, equal length, 48 kHz, non-empty.
FeaturePair ComputeFeatures(const AudioBuffer& reference,
                            const AudioBuffer& probe,
                            BoundaryMode mode,
                            const EarModelConfig& config = EarModelConfig());

// Same computation against a prebuilt model (avoids re-deriving tables in
// per-segment loops).
FeaturePair ComputeFeatures(const FftEarModel& model,
                            const AudioBuffer& reference,
                            const AudioBuffer& probe,
                            BoundaryMode mode);

}  // namespace sepremix::peaq

#endif  // SEPREMIX_CORE_PEAQ_FEATURES_H_
