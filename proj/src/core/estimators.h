// src/core/estimators.h

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

#ifndef SEPREMIX_CORE_ESTIMATORS_H_
#define SEPREMIX_CORE_ESTIMATORS_H_

#include <optional>
#include <string>
#include <vector>

#include "core/audio_buffer.h"
#include "core/nn/network.h"
#include "core/twof/twof_model.h"

namespace sepremix::est {

// The three estimator variants differ only in what rides on the second
// input channel: the clean target (intrusive), the input mixture
// (non-intrusive), or nothing (reference-free).
enum class Variant {
  kIntrusive,      // iDNN2f
  kNonIntrusive,   // nDNN2f
  kReferenceFree,  // rDNN2f
};

int VariantChannels(Variant v);
std::string VariantName(Variant v);
Variant VariantFromName(const std::string& name);  // accepts i/n/r and full names

// Stacks probe (channel 0) and reference (channel 1, if any) segments into
// the network input tensor. Segments must already have the network length.
nn::Batch<float> AssembleInput(Variant variant,
                               const std::vector<float>& probe_segment,
                               const std::vector<float>* reference_segment);

// Chunked prediction: per audio channel, 4 s segments at 50% overlap run in
// inference mode and are averaged; the item estimate is the channel mean.
twof::QualityScore PredictQuality(nn::Network<float>& network, Variant variant,
                                  const AudioBuffer& probe,
                                  const AudioBuffer* reference);

}  // namespace sepremix::est

#endif  // SEPREMIX_CORE_ESTIMATORS_H_
