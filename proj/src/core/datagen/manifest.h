// src/core/datagen/manifest.h

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

#ifndef SEPREMIX_CORE_DATAGEN_MANIFEST_H_
#define SEPREMIX_CORE_DATAGEN_MANIFEST_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "core/estimators.h"
#include "core/nn/train.h"

namespace sepremix::datagen {

// One labeled example: a probe with its clean reference, the input mixture,
// and the quality label. Paths are stored relative to the manifest file.
struct ManifestRow {
  std::string id;
  std::string item;       // source item the row was generated from
  std::string split;      // train / valid / test
  std::string probe;
  std::string reference;
  std::string mixture;
  double label = 0.0;
  double snr_db = 0.0;
  std::string generator;  // provenance of the probe variant
};

// Line-delimited JSON records; the first line is a meta record carrying the
// seed and config hash.
void WriteManifest(const std::string& path,
                   const std::map<std::string, std::string>& meta,
                   const std::vector<ManifestRow>& rows);

struct Manifest {
  std::map<std::string, std::string> meta;
  std::vector<ManifestRow> rows;
  std::string directory;  // for resolving relative paths
};

Manifest ReadManifest(const std::string& path);

// Training adapter: maps rows to (input tensor, label) for one estimator
// variant. Items longer than the network input contribute their leading
// segment; shorter ones are zero-padded. Decoded audio is cached.
class ManifestDataset : public nn::ExampleSource {
 public:
  ManifestDataset(Manifest manifest, est::Variant variant,
                  int64_t input_length = kSegmentSamples);

  int64_t size() const override;
  int channels() const override;
  int64_t input_length() const override { return input_length_; }
  void Get(int64_t index, float* input, float* target) const override;

  const Manifest& manifest() const { return manifest_; }

 private:
  const std::vector<float>& CachedMono(const std::string& rel_path) const;

  Manifest manifest_;
  est::Variant variant_;
  int64_t input_length_;
  mutable std::map<std::string, std::unique_ptr<std::vector<float>>> cache_;
};

}  // namespace sepremix::datagen

#endif  // SEPREMIX_CORE_DATAGEN_MANIFEST_H_
