// src/core/datagen/corpus.cc

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

#include "core/datagen/corpus.h"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>

#include "core/common.h"
#include "core/crc32.h"
#include "core/datagen/mixing.h"
#include "core/nn/blas_gemm.h"
#include "core/twof/twof_model.h"
#include "core/wav_io.h"

namespace sepremix::datagen {

namespace fs = std::filesystem;

namespace {

std::vector<DistortionKind> ParseKinds(const KvConfig& kv,
                                       const std::string& key,
                                       const std::string& dflt) {
  std::vector<DistortionKind> out;
  for (const auto& name : kv.GetStringList(key, dflt))
    out.push_back(DistortionKindFromName(name));
  return out;
}

std::vector<std::string> ListWavs(const std::string& dir) {
  Require(fs::is_directory(dir), StatusCode::kIoError,
          "not a directory: " + dir);
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
    if (ext == ".wav") out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Random crop with a bias towards active regions; pads or tiles short stems.
std::vector<float> CropOrTile(const std::vector<float>& x, int64_t length,
                              Rng* rng, bool want_active) {
  std::vector<float> out(length, 0.0f);
  const int64_t n = static_cast<int64_t>(x.size());
  if (n == 0) return out;
  if (n <= length) {
    for (int64_t i = 0; i < length; ++i) out[i] = x[i % n];
    return out;
  }
  std::uniform_int_distribution<int64_t> dist(0, n - length);
  int64_t start = dist(*rng);
  for (int attempt = 0; want_active && attempt < 16; ++attempt) {
    double power = 0.0;
    for (int64_t i = 0; i < length; i += 97)
      power += static_cast<double>(x[start + i]) * x[start + i];
    if (power / (length / 97.0) > 1e-5) break;
    start = dist(*rng);
  }
  std::copy(x.begin() + start, x.begin() + start + length, out.begin());
  return out;
}

// Randomized strong distortion standing in for a separation system output.
DistortionSpec RandomizeSimulation(DistortionKind kind, const KvConfig& cfg,
                                   uint64_t seed) {
  Rng rng(Mix64(seed ^ 0x51A151A1B0B0CAFEull));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto draw = [&](const std::string& key, double lo, double hi) {
    const auto v = cfg.GetDoubleList(key, std::to_string(lo) + "," + std::to_string(hi));
    Require(v.size() == 2 && v[0] <= v[1], StatusCode::kFormatError,
            "range key '" + key + "' needs 'lo,hi'");
    return v[0] + (v[1] - v[0]) * u(rng);
  };
  DistortionSpec spec;
  spec.kind = kind;
  spec.seed = Mix64(seed + 7);
  spec.randomized = true;
  switch (kind) {
    case DistortionKind::kMusicalNoise:
      spec.musical_noise_strength = draw("sim_musical_noise_strength", 0.5, 0.95);
      break;
    case DistortionKind::kLowpass:
      spec.lowpass_cutoff_hz = draw("sim_lowpass_cutoff_hz", 800.0, 4000.0);
      break;
    case DistortionKind::kClipping:
      spec.clip_fraction = draw("sim_clip_fraction", 0.3, 0.7);
      break;
    case DistortionKind::kTfBlur:
      spec.tf_time_ms = draw("sim_tf_time_ms", 30.0, 80.0);
      spec.tf_freq_hz = draw("sim_tf_freq_hz", 300.0, 800.0);
      break;
  }
  return spec;
}

std::string FormatDb(double db) {
  if (std::isinf(db) && db < 0) return "-inf";
  char buf[32];
  snprintf(buf, sizeof(buf), "%g", db);
  return buf;
}

struct ItemOutput {
  std::vector<ManifestRow> rows;
};

}  // namespace

CorpusConfig CorpusConfig::FromKv(const KvConfig& kv) {
  CorpusConfig c;
  c.raw = kv;
  c.items = static_cast<int>(kv.GetInt("items", 0));
  c.crop_seconds = kv.GetDouble("crop_seconds", 4.0);
  c.snr_min_db = kv.GetDouble("snr_min_db", -10.0);
  c.snr_max_db = kv.GetDouble("snr_max_db", 10.0);
  c.artifact_free_ladder_db =
      kv.GetDoubleList("artifact_free_ladder_db", "-inf,-35,-20,0");
  c.readdition_ladder_db =
      kv.GetDoubleList("readdition_ladder_db", "-inf,-40,-14");
  c.fixed_distortions = ParseKinds(kv, "fixed_distortions",
                                   "musical_noise,lowpass,clipping,tf_blur");
  c.randomized_distortions = ParseKinds(
      kv, "randomized_distortions", "musical_noise,lowpass,clipping,tf_blur");
  c.randomized_readdition_db = kv.GetDouble("randomized_readdition_db", -45.0);
  c.silence_seconds = kv.GetDouble("silence_seconds", 0.0);
  c.split_train = kv.GetDouble("split_train", 0.7);
  c.split_valid = kv.GetDouble("split_valid", 0.15);
  c.split_test = kv.GetDouble("split_test", 0.15);
  c.playback_level_db = kv.GetDouble("playback_level_db", 92.0);
  Require(c.crop_seconds > 0 && c.snr_min_db <= c.snr_max_db,
          StatusCode::kInvalidArgument, "invalid corpus configuration");
  return c;
}

int64_t CorpusConfig::VariantsPerItem() const {
  return static_cast<int64_t>(artifact_free_ladder_db.size()) +
         static_cast<int64_t>(readdition_ladder_db.size()) +
         static_cast<int64_t>(fixed_distortions.size()) +
         static_cast<int64_t>(randomized_distortions.size());
}

CorpusResult BuildCorpus(const std::string& speech_dir,
                         const std::string& background_dir,
                         const CorpusConfig& config, uint64_t seed,
                         const std::string& out_dir) {
  const auto speech_stems = ListWavs(speech_dir);
  const auto background_stems = ListWavs(background_dir);
  Require(!speech_stems.empty(), StatusCode::kEmptyDataset,
          "no WAV stems in speech directory " + speech_dir);
  Require(!background_stems.empty(), StatusCode::kEmptyDataset,
          "no WAV stems in background directory " + background_dir);

  fs::create_directories(out_dir);
  const int64_t crop = static_cast<int64_t>(
      std::llround(config.crop_seconds * kSampleRate));
  const int item_count = config.items > 0
                             ? config.items
                             : static_cast<int>(speech_stems.size());

  const twof::Coefficients coeffs = twof::Coefficients::Defaults();
  peaq::EarModelConfig ear;
  ear.playback_level_db = config.playback_level_db;

  auto split_of = [&](uint64_t item_seed) {
    const double u =
        static_cast<double>(Mix64(item_seed ^ 0x517D715EEDull) % (1ull << 52)) /
        static_cast<double>(1ull << 52);
    if (u < config.split_train) return std::string("train");
    if (u < config.split_train + config.split_valid) return std::string("valid");
    return std::string("test");
  };

  std::vector<ItemOutput> outputs(item_count);
  std::exception_ptr first_error;

#pragma omp parallel for schedule(dynamic) num_threads(nn::NumThreads())
  for (int item = 0; item < item_count; ++item) {
    try {
    const uint64_t item_seed = DeriveSeed(seed, static_cast<uint64_t>(item));
    Rng rng(item_seed);

    char name[32];
    snprintf(name, sizeof(name), "item_%04d", item);
    const fs::path item_dir = fs::path(out_dir) / name;
    fs::create_directories(item_dir);

    const AudioBuffer speech_stem =
        DownmixMono(LoadWav(speech_stems[item % speech_stems.size()]));
    const AudioBuffer background_stem =
        DownmixMono(LoadWav(background_stems[item % background_stems.size()]));
    Require(speech_stem.sample_rate() == kSampleRate &&
                background_stem.sample_rate() == kSampleRate,
            StatusCode::kFormatError, "stems must be 48 kHz");

    const AudioBuffer speech = AudioBuffer::Mono(
        CropOrTile(speech_stem.channel(0), crop, &rng, true), kSampleRate);
    const AudioBuffer background = AudioBuffer::Mono(
        CropOrTile(background_stem.channel(0), crop, &rng, false), kSampleRate);

    std::uniform_real_distribution<double> snr_dist(config.snr_min_db,
                                                    config.snr_max_db);
    const double snr_db = snr_dist(rng);
    const MixResult mix = MixAtSnr(speech, background, snr_db);

    const std::string ref_rel = std::string(name) + "/reference.wav";
    const std::string mix_rel = std::string(name) + "/mixture.wav";
    SaveWav(speech, (fs::path(out_dir) / ref_rel).string());
    SaveWav(mix.mixture, (fs::path(out_dir) / mix_rel).string());

    const std::string split = split_of(item_seed);
    int variant_index = 0;
    auto emit = [&](const AudioBuffer& probe, const std::string& generator) {
      char probe_name[32];
      snprintf(probe_name, sizeof(probe_name), "probe_%02d.wav", variant_index);
      const std::string probe_rel = std::string(name) + "/" + probe_name;
      SaveWav(probe, (fs::path(out_dir) / probe_rel).string());

      ManifestRow row;
      row.id = std::string(name) + "/" +
               std::to_string(variant_index);
      row.item = name;
      row.split = split;
      row.probe = probe_rel;
      row.reference = ref_rel;
      row.mixture = mix_rel;
      row.snr_db = snr_db;
      row.generator = generator;
      row.label =
          twof::ScoreItem(speech, probe, peaq::BoundaryMode::kDisabled, coeffs,
                          ear)
              .value;
      outputs[item].rows.push_back(std::move(row));
      ++variant_index;
    };

    // Artifact-free separation: clean speech plus attenuated background.
    for (double att : config.artifact_free_ladder_db)
      emit(RemixComponents(speech, mix.background, att),
           "artifact_free:" + FormatDb(att));

    // Simulated separation output with its background estimate re-added.
    if (!config.readdition_ladder_db.empty()) {
      const DistortionKind sim_kind =
          config.fixed_distortions.empty()
              ? DistortionKind::kMusicalNoise
              : config.fixed_distortions[item % config.fixed_distortions.size()];
      const DistortionSpec sim =
          RandomizeSimulation(sim_kind, config.raw, Mix64(item_seed ^ 0x31337));
      const AudioBuffer separated = ApplyDistortion(sim, speech);
      // b_hat = x - s_hat
      AudioBuffer residual = mix.mixture;
      for (int64_t i = 0; i < residual.length(); ++i)
        residual.mutable_channel(0)[i] -= separated.channel(0)[i];
      for (double att : config.readdition_ladder_db)
        emit(RemixComponents(separated, residual, att),
             "readdition:" + FormatDb(att) + ":" + sim.Describe());
    }

    // Fixed strong distortions of the clean speech.
    for (size_t k = 0; k < config.fixed_distortions.size(); ++k) {
      DistortionSpec spec;
      spec.kind = config.fixed_distortions[k];
      spec.seed = Mix64(item_seed ^ (0xF1D0 + k));
      emit(ApplyDistortion(spec, speech), "fixed:" + spec.Describe());
    }

    // Mildly randomized distortions with a faint background estimate.
    for (size_t k = 0; k < config.randomized_distortions.size(); ++k) {
      const DistortionSpec spec =
          RandomizeDistortion(config.randomized_distortions[k], config.raw,
                              Mix64(item_seed ^ (0xAB1E + 31 * k)));
      const AudioBuffer distorted = ApplyDistortion(spec, speech);
      AudioBuffer residual = mix.mixture;
      for (int64_t i = 0; i < residual.length(); ++i)
        residual.mutable_channel(0)[i] -= distorted.channel(0)[i];
      emit(RemixComponents(distorted, residual, config.randomized_readdition_db),
           "randomized:" + FormatDb(config.randomized_readdition_db) + ":" +
               spec.Describe());
    }
    } catch (...) {
#pragma omp critical
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<ManifestRow> rows;
  for (auto& out : outputs)
    for (auto& r : out.rows) rows.push_back(std::move(r));

  // Silence items: reference and probe both silent, labeled like any other
  // pair.
  const int silence_items = static_cast<int>(
      std::ceil(config.silence_seconds / config.crop_seconds));
  if (config.silence_seconds > 0) {
    const AudioBuffer silence = AudioBuffer::Silence(1, crop, kSampleRate);
    const double silence_label =
        twof::ScoreItem(silence, silence, peaq::BoundaryMode::kDisabled, coeffs,
                        ear)
            .value;
    for (int i = 0; i < silence_items; ++i) {
      char name[32];
      snprintf(name, sizeof(name), "silence_%04d", i);
      const fs::path item_dir = fs::path(out_dir) / name;
      fs::create_directories(item_dir);
      const std::string rel = std::string(name) + "/silence.wav";
      SaveWav(silence, (fs::path(out_dir) / rel).string());
      ManifestRow row;
      row.id = std::string(name) + "/0";
      row.item = name;
      row.split = split_of(DeriveSeed(seed, std::string("silence") +
                                                std::to_string(i)));
      row.probe = rel;
      row.reference = rel;
      row.mixture = rel;
      row.label = silence_label;
      row.snr_db = 0.0;
      row.generator = "silence";
      rows.push_back(std::move(row));
    }
  }

  std::map<std::string, std::string> meta;
  meta["seed"] = std::to_string(seed);
  meta["config_hash"] = HexU32(Crc32::Of(config.raw.ToString()));
  meta["coefficients"] = coeffs.Id();
  meta["playback_level_db"] = std::to_string(config.playback_level_db);

  CorpusResult result;
  result.items = item_count + (config.silence_seconds > 0 ? silence_items : 0);
  result.rows = static_cast<int64_t>(rows.size());
  result.manifest_path = (fs::path(out_dir) / "manifest.jsonl").string();
  WriteManifest(result.manifest_path, meta, rows);

  for (const std::string split : {"train", "valid", "test"}) {
    std::vector<ManifestRow> subset;
    for (const auto& r : rows)
      if (r.split == split) subset.push_back(r);
    if (subset.empty()) continue;
    const std::string path =
        (fs::path(out_dir) / ("manifest_" + split + ".jsonl")).string();
    WriteManifest(path, meta, subset);
    result.split_manifests.push_back(path);
  }
  return result;
}

}  // namespace sepremix::datagen
