// src/core/audio_buffer.cc

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

#include "core/audio_buffer.h"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "core/common.h"

namespace sepremix {

AudioBuffer::AudioBuffer(std::vector<std::vector<float>> channels,
                         int sample_rate)
    : channels_(std::move(channels)), sample_rate_(sample_rate) {}

AudioBuffer AudioBuffer::Mono(std::vector<float> samples, int sample_rate) {
  std::vector<std::vector<float>> ch;
  ch.push_back(std::move(samples));
  return AudioBuffer(std::move(ch), sample_rate);
}

AudioBuffer AudioBuffer::Silence(int channels, int64_t length,
                                 int sample_rate) {
  std::vector<std::vector<float>> ch(channels,
                                     std::vector<float>(length, 0.0f));
  return AudioBuffer(std::move(ch), sample_rate);
}

void AudioBuffer::Validate() const {
  Require(sample_rate_ > 0, StatusCode::kFormatError,
          "sample rate must be positive");
  Require(!channels_.empty(), StatusCode::kFormatError,
          "buffer has no channels");
  const size_t n = channels_[0].size();
  for (const auto& ch : channels_) {
    Require(ch.size() == n, StatusCode::kFormatError,
            "channels have unequal lengths");
    for (float v : ch)
      Require(std::isfinite(v), StatusCode::kFormatError,
              "non-finite sample amplitude");
  }
}

AudioBuffer DownmixMono(const AudioBuffer& buffer) {
  Require(buffer.channel_count() > 0, StatusCode::kFormatError,
          "cannot downmix empty buffer");
  if (buffer.IsMono()) return buffer;
  const int64_t n = buffer.length();
  const int c = buffer.channel_count();
  std::vector<float> out(n, 0.0f);
  for (int k = 0; k < c; ++k) {
    const auto& ch = buffer.channel(k);
    for (int64_t i = 0; i < n; ++i) out[i] += ch[i];
  }
  const float scale = 1.0f / static_cast<float>(c);
  for (auto& v : out) v *= scale;
  return AudioBuffer::Mono(std::move(out), buffer.sample_rate());
}

int64_t SegmentCount(int64_t num_samples, int64_t length, int64_t hop) {
  if (num_samples <= length) return 1;
  const int64_t over = num_samples - length;
  return (over + hop - 1) / hop + 1;  // ceil(over/hop) + 1
}

SegmentSet Segment(const AudioBuffer& buffer, int64_t length, int64_t hop) {
  Require(buffer.IsMono(), StatusCode::kFormatError,
          "segmentation expects a mono buffer");
  Require(buffer.sample_rate() == kSampleRate, StatusCode::kFormatError,
          "expected 48 kHz input, got " + std::to_string(buffer.sample_rate()) +
              " Hz (resampling is not performed)");
  Require(length > 0 && hop > 0, StatusCode::kInvalidArgument,
          "segment length and hop must be positive");

  const auto& x = buffer.channel(0);
  const int64_t n = buffer.length();
  SegmentSet set;
  set.segment_length = length;
  set.hop = hop;
  set.source_length = n;
  const int64_t count = SegmentCount(n, length, hop);
  set.offsets.reserve(count);
  set.segments.reserve(count);
  for (int64_t s = 0; s < count; ++s) {
    const int64_t start = s * hop;
    std::vector<float> seg(length, 0.0f);
    const int64_t avail = std::max<int64_t>(0, std::min(length, n - start));
    if (avail > 0)
      std::memcpy(seg.data(), x.data() + start, sizeof(float) * avail);
    set.offsets.push_back(start);
    set.segments.push_back(std::move(seg));
  }
  return set;
}

}  // namespace sepremix
