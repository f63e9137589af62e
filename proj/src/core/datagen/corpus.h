// src/core/datagen/corpus.h

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

#ifndef SEPREMIX_CORE_DATAGEN_CORPUS_H_
#define SEPREMIX_CORE_DATAGEN_CORPUS_H_

#include <string>
#include <vector>

#include "core/datagen/distortions.h"
#include "core/datagen/manifest.h"
#include "core/kv_config.h"

namespace sepremix::datagen {

// Synthetic corpus recipe. Per source item: speech and background crops are
// mixed at a random SNR, then labeled probe variants are generated:
//   - artifact-free: original speech with the background re-added along an
//     attenuation ladder,
//   - separation simulation: a randomized strong distortion of the speech
//     with the estimated background (mixture minus probe speech) re-added
//     along a second ladder,
//   - the four fixed distortions at their strong settings,
//   - each distortion with mildly randomized parameters plus a heavily
//     attenuated background estimate.
// Every probe is labeled by the quality model against the clean speech with
// boundary detection disabled.
struct CorpusConfig {
  int items = 0;  // 0: one item per speech stem
  double crop_seconds = 4.0;
  double snr_min_db = -10.0;
  double snr_max_db = 10.0;
  std::vector<double> artifact_free_ladder_db = {
      -std::numeric_limits<double>::infinity(), -35.0, -20.0, 0.0};
  std::vector<double> readdition_ladder_db = {
      -std::numeric_limits<double>::infinity(), -40.0, -14.0};
  std::vector<DistortionKind> fixed_distortions = {
      DistortionKind::kMusicalNoise, DistortionKind::kLowpass,
      DistortionKind::kClipping, DistortionKind::kTfBlur};
  std::vector<DistortionKind> randomized_distortions = {
      DistortionKind::kMusicalNoise, DistortionKind::kLowpass,
      DistortionKind::kClipping, DistortionKind::kTfBlur};
  double randomized_readdition_db = -45.0;
  double silence_seconds = 0.0;
  double split_train = 0.7;
  double split_valid = 0.15;
  double split_test = 0.15;
  double playback_level_db = 92.0;
  KvConfig raw;  // randomization ranges and overrides

  static CorpusConfig FromKv(const KvConfig& kv);
  int64_t VariantsPerItem() const;
};

struct CorpusResult {
  std::string manifest_path;
  std::vector<std::string> split_manifests;  // train, valid, test (existing only)
  int64_t items = 0;
  int64_t rows = 0;
};

// speech_dir / background_dir hold 48 kHz WAV stems. Outputs probe WAVs and
// manifests under out_dir; deterministic for a fixed (inputs, config, seed).
CorpusResult BuildCorpus(const std::string& speech_dir,
                         const std::string& background_dir,
                         const CorpusConfig& config, uint64_t seed,
                         const std::string& out_dir);

}  // namespace sepremix::datagen

#endif  // SEPREMIX_CORE_DATAGEN_CORPUS_H_
