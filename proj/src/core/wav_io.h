// src/core/wav_io.h

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

#ifndef SEPREMIX_CORE_WAV_IO_H_
#define SEPREMIX_CORE_WAV_IO_H_

#include <string>

#include "core/audio_buffer.h"

namespace sepremix {

enum class WavFormat {
  kPcm16,
  kPcm24,
  kPcm32,
  kFloat32,
};

// RIFF/WAVE, little-endian. Integer PCM is normalized to [-1, 1) by
// 2^(bits-1); float data is passed through unchanged.
AudioBuffer LoadWav(const std::string& path);

// Integer formats clamp out-of-range amplitudes; float preserves values.
void SaveWav(const AudioBuffer& buffer, const std::string& path,
             WavFormat format = WavFormat::kFloat32);

WavFormat WavFormatFromBitDepth(int bit_depth, bool floating_point);

}  // namespace sepremix

#endif  // SEPREMIX_CORE_WAV_IO_H_
