// src/core/twof/twof_model.cc

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

#include "core/twof/twof_model.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/common.h"
#include "core/crc32.h"
#include "core/kv_config.h"

namespace sepremix::twof {

Coefficients Coefficients::Load(const std::string& path) {
  const KvConfig kv = KvConfig::Load(path);
  Coefficients c;
  c.version = static_cast<int>(kv.GetInt("version"));
  c.constant = kv.GetDouble("constant");
  c.adb_numerator = kv.GetDouble("adb_numerator");
  c.adb_scale = kv.GetDouble("adb_scale");
  c.adb_offset = kv.GetDouble("adb_offset");
  c.amd1_scale = kv.GetDouble("amd1_scale");
  c.amd1_exponent = kv.GetDouble("amd1_exponent");
  c.score_min = kv.GetDouble("score_min", 0.0);
  c.score_max = kv.GetDouble("score_max", 100.0);
  Require(c.score_min < c.score_max, StatusCode::kFormatError,
          "coefficient file has unordered score bounds: " + path);
  return c;
}

std::string Coefficients::Id() const {
  std::ostringstream ss;
  ss.precision(17);
  ss << version << '|' << constant << '|' << adb_numerator << '|' << adb_scale
     << '|' << adb_offset << '|' << amd1_scale << '|' << amd1_exponent << '|'
     << score_min << '|' << score_max;
  return "2f-v" + std::to_string(version) + "-" + HexU32(Crc32::Of(ss.str()));
}

double MapFeatures(const peaq::FeaturePair& features, const Coefficients& c) {
  Require(std::isfinite(features.adb) && std::isfinite(features.avg_mod_diff_1),
          StatusCode::kInvalidArgument, "non-finite features");
  const double u = c.adb_scale * features.adb + c.adb_offset;
  const double adb_term = c.adb_numerator / (1.0 + u * u);
  const double amd = std::max(features.avg_mod_diff_1, 0.0);
  const double amd_term =
      amd > 0.0 ? c.amd1_scale * std::pow(amd, c.amd1_exponent) : 0.0;
  const double raw = c.constant + adb_term + amd_term;
  return std::clamp(raw, c.score_min, c.score_max);
}

QualityScore ScoreItem(const AudioBuffer& reference, const AudioBuffer& probe,
                       peaq::BoundaryMode mode, const Coefficients& coeffs,
                       const peaq::EarModelConfig& ear) {
  Require(reference.channel_count() == probe.channel_count(),
          StatusCode::kFormatError, "channel count mismatch");
  Require(reference.length() == probe.length(), StatusCode::kFormatError,
          "reference/probe length mismatch");
  Require(reference.sample_rate() == probe.sample_rate(),
          StatusCode::kFormatError, "sample rate mismatch");

  const peaq::FftEarModel model(ear);
  QualityScore out;
  const int channels = reference.channel_count();
  for (int c = 0; c < channels; ++c) {
    AudioBuffer ref_ch = AudioBuffer::Mono(reference.channel(c),
                                           reference.sample_rate());
    AudioBuffer probe_ch =
        AudioBuffer::Mono(probe.channel(c), probe.sample_rate());
    const SegmentSet ref_segs = Segment(ref_ch);
    const SegmentSet probe_segs = Segment(probe_ch);

    double channel_sum = 0.0;
    for (size_t s = 0; s < ref_segs.segments.size(); ++s) {
      AudioBuffer ref_seg =
          AudioBuffer::Mono(ref_segs.segments[s], kSampleRate);
      AudioBuffer probe_seg =
          AudioBuffer::Mono(probe_segs.segments[s], kSampleRate);
      SegmentScore seg;
      seg.channel = c;
      seg.offset = ref_segs.offsets[s];
      seg.features = peaq::ComputeFeatures(model, ref_seg, probe_seg, mode);
      seg.score = MapFeatures(seg.features, coeffs);
      channel_sum += seg.score;
      out.per_segment.push_back(std::move(seg));
    }
    out.per_channel.push_back(channel_sum /
                              static_cast<double>(ref_segs.segments.size()));
  }

  double total = 0.0;
  for (double v : out.per_channel) total += v;
  out.value = total / static_cast<double>(channels);
  return out;
}

}  // namespace sepremix::twof
