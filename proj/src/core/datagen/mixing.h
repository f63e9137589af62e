// src/core/datagen/mixing.h

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

#ifndef SEPREMIX_CORE_DATAGEN_MIXING_H_
#define SEPREMIX_CORE_DATAGEN_MIXING_H_

#include "core/audio_buffer.h"

namespace sepremix::datagen {

struct MixResult {
  AudioBuffer mixture;     // speech + scaled background
  AudioBuffer background;  // background after SNR scaling
  double scale = 1.0;      // applied linear factor
};

// Scales the background so the speech-to-background power ratio over the
// active speech region equals snr_db, then sums. Activity is judged on
// 10 ms blocks above activity_floor_db (dBFS mean square). Errors on silent
// speech or silent background (both leave the SNR undefined).
MixResult MixAtSnr(const AudioBuffer& speech, const AudioBuffer& background,
                   double snr_db, double activity_floor_db = -50.0);

// probe = target + 10^(atten_db/20) * background; -inf passes the target
// through untouched.
AudioBuffer RemixComponents(const AudioBuffer& target,
                            const AudioBuffer& background, double atten_db);

}  // namespace sepremix::datagen

#endif  // SEPREMIX_CORE_DATAGEN_MIXING_H_
