// src/core/estimators.cc

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

#include "core/estimators.h"

#include <algorithm>

#include "core/common.h"

namespace sepremix::est {

int VariantChannels(Variant v) {
  return v == Variant::kReferenceFree ? 1 : 2;
}

std::string VariantName(Variant v) {
  switch (v) {
    case Variant::kIntrusive: return "iDNN2f";
    case Variant::kNonIntrusive: return "nDNN2f";
    case Variant::kReferenceFree: return "rDNN2f";
  }
  return "?";
}

Variant VariantFromName(const std::string& name) {
  if (name == "i" || name == "intrusive" || name == "iDNN2f")
    return Variant::kIntrusive;
  if (name == "n" || name == "non_intrusive" || name == "non-intrusive" ||
      name == "nDNN2f")
    return Variant::kNonIntrusive;
  if (name == "r" || name == "reference_free" || name == "reference-free" ||
      name == "rDNN2f")
    return Variant::kReferenceFree;
  Throw(StatusCode::kInvalidArgument, "unknown estimator variant: " + name);
}

nn::Batch<float> AssembleInput(Variant variant,
                               const std::vector<float>& probe_segment,
                               const std::vector<float>* reference_segment) {
  const bool wants_reference = variant != Variant::kReferenceFree;
  Require(wants_reference == (reference_segment != nullptr),
          StatusCode::kInvalidArgument,
          wants_reference ? "variant requires a reference segment"
                          : "reference-free variant takes no reference");
  if (reference_segment)
    Require(reference_segment->size() == probe_segment.size(),
            StatusCode::kFormatError, "probe/reference segment length mismatch");

  nn::Batch<float> input;
  input.Resize(1, VariantChannels(variant),
               static_cast<int64_t>(probe_segment.size()));
  std::copy(probe_segment.begin(), probe_segment.end(), input.example(0));
  if (reference_segment)
    std::copy(reference_segment->begin(), reference_segment->end(),
              input.example(0) + probe_segment.size());
  return input;
}

twof::QualityScore PredictQuality(nn::Network<float>& network, Variant variant,
                                  const AudioBuffer& probe,
                                  const AudioBuffer* reference) {
  Require(network.config().input_channels == VariantChannels(variant),
          StatusCode::kCheckpointMismatch,
          "checkpoint input channels do not match variant " +
              VariantName(variant));
  const bool wants_reference = variant != Variant::kReferenceFree;
  Require(wants_reference == (reference != nullptr),
          StatusCode::kInvalidArgument,
          wants_reference ? "variant requires a reference signal"
                          : "reference-free variant takes no reference");
  if (reference) {
    Require(reference->length() == probe.length() &&
                reference->channel_count() == probe.channel_count() &&
                reference->sample_rate() == probe.sample_rate(),
            StatusCode::kFormatError, "probe/reference misaligned");
  }
  Require(network.config().input_length == kSegmentSamples,
          StatusCode::kCheckpointMismatch,
          "checkpoint input length does not match the segment size");

  twof::QualityScore out;
  nn::Batch<float> output;
  for (int c = 0; c < probe.channel_count(); ++c) {
    const SegmentSet probe_segs =
        Segment(AudioBuffer::Mono(probe.channel(c), probe.sample_rate()));
    SegmentSet ref_segs;
    if (reference)
      ref_segs = Segment(
          AudioBuffer::Mono(reference->channel(c), reference->sample_rate()));

    double channel_sum = 0.0;
    for (size_t s = 0; s < probe_segs.segments.size(); ++s) {
      nn::Batch<float> input = AssembleInput(
          variant, probe_segs.segments[s],
          reference ? &ref_segs.segments[s] : nullptr);
      network.Forward(input, &output, /*train=*/false);
      twof::SegmentScore seg;
      seg.channel = c;
      seg.offset = probe_segs.offsets[s];
      seg.score = static_cast<double>(output.data[0]);
      channel_sum += seg.score;
      out.per_segment.push_back(seg);
    }
    out.per_channel.push_back(
        channel_sum / static_cast<double>(probe_segs.segments.size()));
  }

  double total = 0.0;
  for (double v : out.per_channel) total += v;
  out.value = total / static_cast<double>(out.per_channel.size());
  return out;
}

}  // namespace sepremix::est
