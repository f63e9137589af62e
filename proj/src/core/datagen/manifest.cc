// src/core/datagen/manifest.cc

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

#include "core/datagen/manifest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "core/common.h"
#include "core/wav_io.h"

namespace sepremix::datagen {

namespace fs = std::filesystem;
using nlohmann::json;

void WriteManifest(const std::string& path,
                   const std::map<std::string, std::string>& meta,
                   const std::vector<ManifestRow>& rows) {
  std::ofstream out(path, std::ios::trunc);
  Require(out.good(), StatusCode::kIoError, "cannot write manifest: " + path);
  json meta_record;
  meta_record["type"] = "meta";
  for (const auto& [k, v] : meta) meta_record[k] = v;
  out << meta_record.dump() << "\n";
  for (const auto& r : rows) {
    json j;
    j["id"] = r.id;
    j["item"] = r.item;
    j["split"] = r.split;
    j["probe"] = r.probe;
    j["reference"] = r.reference;
    j["mixture"] = r.mixture;
    j["label"] = r.label;
    j["snr_db"] = r.snr_db;
    j["generator"] = r.generator;
    out << j.dump() << "\n";
  }
  Require(out.good(), StatusCode::kIoError, "short write to manifest: " + path);
}

Manifest ReadManifest(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), StatusCode::kIoError, "cannot open manifest: " + path);
  Manifest m;
  m.directory = fs::path(path).parent_path().string();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      Throw(StatusCode::kFormatError, "manifest " + path + " line " +
                                          std::to_string(lineno) + ": " +
                                          e.what());
    }
    if (j.value("type", "") == "meta") {
      for (auto& [k, v] : j.items())
        if (k != "type") m.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
      continue;
    }
    ManifestRow r;
    try {
      r.id = j.at("id").get<std::string>();
      r.probe = j.at("probe").get<std::string>();
      r.reference = j.at("reference").get<std::string>();
      r.mixture = j.at("mixture").get<std::string>();
      r.label = j.at("label").get<double>();
      r.item = j.value("item", "");
      r.split = j.value("split", "");
      r.snr_db = j.value("snr_db", 0.0);
      r.generator = j.value("generator", "");
    } catch (const json::exception& e) {
      Throw(StatusCode::kFormatError, "manifest " + path + " line " +
                                          std::to_string(lineno) + ": " +
                                          e.what());
    }
    m.rows.push_back(std::move(r));
  }
  return m;
}

ManifestDataset::ManifestDataset(Manifest manifest, est::Variant variant,
                                 int64_t input_length)
    : manifest_(std::move(manifest)),
      variant_(variant),
      input_length_(input_length) {
  Require(!manifest_.rows.empty(), StatusCode::kEmptyDataset,
          "manifest has no rows");
}

int64_t ManifestDataset::size() const {
  return static_cast<int64_t>(manifest_.rows.size());
}

int ManifestDataset::channels() const { return est::VariantChannels(variant_); }

const std::vector<float>& ManifestDataset::CachedMono(
    const std::string& rel_path) const {
  auto it = cache_.find(rel_path);
  if (it != cache_.end()) return *it->second;
  const fs::path full = fs::path(manifest_.directory) / rel_path;
  AudioBuffer buf = DownmixMono(LoadWav(full.string()));
  auto stored = std::make_unique<std::vector<float>>(buf.channel(0));
  const auto& ref = *stored;
  cache_.emplace(rel_path, std::move(stored));
  return ref;
}

void ManifestDataset::Get(int64_t index, float* input, float* target) const {
  const ManifestRow& row = manifest_.rows.at(index);
  auto fill = [&](const std::string& rel, float* dst) {
    const auto& samples = CachedMono(rel);
    const int64_t n = std::min<int64_t>(input_length_,
                                        static_cast<int64_t>(samples.size()));
    std::copy(samples.begin(), samples.begin() + n, dst);
    std::fill(dst + n, dst + input_length_, 0.0f);
  };
  fill(row.probe, input);
  switch (variant_) {
    case est::Variant::kIntrusive:
      fill(row.reference, input + input_length_);
      break;
    case est::Variant::kNonIntrusive:
      fill(row.mixture, input + input_length_);
      break;
    case est::Variant::kReferenceFree:
      break;
  }
  *target = static_cast<float>(row.label);
}

}  // namespace sepremix::datagen
