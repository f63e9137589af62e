// src/core/audio_buffer.h

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

#ifndef SEPREMIX_CORE_AUDIO_BUFFER_H_
#define SEPREMIX_CORE_AUDIO_BUFFER_H_

#include <cstdint>
#include <vector>

namespace sepremix {

// Multichannel sampled waveform. Full scale is +-1.0; buffers are treated
// as immutable once built and are safe to share across threads.
class AudioBuffer {
 public:
  AudioBuffer() = default;
  AudioBuffer(std::vector<std::vector<float>> channels, int sample_rate);

  static AudioBuffer Mono(std::vector<float> samples, int sample_rate);
  static AudioBuffer Silence(int channels, int64_t length, int sample_rate);

  int channel_count() const { return static_cast<int>(channels_.size()); }
  int sample_rate() const { return sample_rate_; }
  int64_t length() const {
    return channels_.empty() ? 0 : static_cast<int64_t>(channels_[0].size());
  }
  double duration_seconds() const {
    return sample_rate_ > 0 ? static_cast<double>(length()) / sample_rate_ : 0.0;
  }

  const std::vector<float>& channel(int c) const { return channels_.at(c); }
  std::vector<float>& mutable_channel(int c) { return channels_.at(c); }

  bool IsMono() const { return channel_count() == 1; }

  // Throws kFormatError on violated invariants (ragged channels, non-finite
  // samples, non-positive rate).
  void Validate() const;

 private:
  std::vector<std::vector<float>> channels_;
  int sample_rate_ = 0;
};

// Mean across channels per sample.
AudioBuffer DownmixMono(const AudioBuffer& buffer);

// Fixed-length windows over a mono buffer. The final partial window is
// zero-padded to full length.
struct SegmentSet {
  int64_t segment_length = 0;
  int64_t hop = 0;
  int64_t source_length = 0;
  std::vector<int64_t> offsets;                 // start sample per segment
  std::vector<std::vector<float>> segments;     // each exactly segment_length
};

constexpr int64_t kSegmentSamples = 192000;  // 4 s at 48 kHz
constexpr int64_t kScoringHop = 96000;       // 50% overlap
constexpr int kSampleRate = 48000;

// Requires mono input at 48 kHz; no implicit resampling.
SegmentSet Segment(const AudioBuffer& buffer,
                   int64_t length = kSegmentSamples,
                   int64_t hop = kScoringHop);

int64_t SegmentCount(int64_t num_samples, int64_t length, int64_t hop);

}  // namespace sepremix

#endif  // SEPREMIX_CORE_AUDIO_BUFFER_H_
