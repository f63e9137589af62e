// src/capi.cc

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

#include "sepremix.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "core/audio_buffer.h"
#include "core/common.h"
#include "core/crc32.h"
#include "core/datagen/corpus.h"
#include "core/datagen/manifest.h"
#include "core/estimators.h"
#include "core/evalharness.h"
#include "core/nn/blas_gemm.h"
#include "core/nn/checkpoint.h"
#include "core/nn/train.h"
#include "core/peaq/features.h"
#include "core/remix.h"
#include "core/twof/twof_model.h"
#include "core/wav_io.h"

using namespace sepremix;

struct sx_buffer {
  AudioBuffer data;
};

struct sx_score {
  twof::QualityScore data;
};

struct sx_model {
  nn::LoadedCheckpoint checkpoint;
  std::string hash_hex;
};

struct sx_eval_report {
  eval::EvalReport data;
};

namespace {

thread_local std::string t_last_error;

sx_status Fail(const Error& e) {
  t_last_error = e.what();
  return static_cast<sx_status>(static_cast<int>(e.code()));
}

sx_status FailGeneric(const std::exception& e) {
  t_last_error = e.what();
  return SX_ERR_INVALID;
}

template <typename Fn>
sx_status Guard(Fn&& fn) {
  try {
    fn();
    return SX_OK;
  } catch (const Error& e) {
    return Fail(e);
  } catch (const std::exception& e) {
    return FailGeneric(e);
  }
}

twof::Coefficients ResolveCoefficients(const char* coeff_path) {
  if (coeff_path && *coeff_path) return twof::Coefficients::Load(coeff_path);
  const char* env = std::getenv("SEPREMIX_TWOF_COEFFS");
  if (env && *env) return twof::Coefficients::Load(env);
  return twof::Coefficients::Defaults();
}

est::Variant ToVariant(sx_variant v) {
  switch (v) {
    case SX_VARIANT_INTRUSIVE: return est::Variant::kIntrusive;
    case SX_VARIANT_NON_INTRUSIVE: return est::Variant::kNonIntrusive;
    case SX_VARIANT_REFERENCE_FREE: return est::Variant::kReferenceFree;
  }
  Throw(StatusCode::kInvalidArgument, "unknown variant value");
}

char* DupString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* sx_last_error(void) { return t_last_error.c_str(); }

const char* sx_version(void) { return "0.1.0"; }

void sx_set_threads(int threads) { nn::SetNumThreads(threads); }

sx_status sx_buffer_load_wav(const char* path, sx_buffer** out) {
  return Guard([&] {
    Require(path && out, StatusCode::kInvalidArgument, "null argument");
    *out = new sx_buffer{LoadWav(path)};
  });
}

sx_status sx_buffer_save_wav(const sx_buffer* buffer, const char* path,
                             int bit_depth, int is_float) {
  return Guard([&] {
    Require(buffer && path, StatusCode::kInvalidArgument, "null argument");
    SaveWav(buffer->data, path, WavFormatFromBitDepth(bit_depth, is_float != 0));
  });
}

sx_status sx_buffer_create(const float* interleaved, int64_t frames,
                           int channels, int sample_rate, sx_buffer** out) {
  return Guard([&] {
    Require(interleaved && out && channels > 0 && frames >= 0,
            StatusCode::kInvalidArgument, "bad buffer arguments");
    std::vector<std::vector<float>> ch(channels, std::vector<float>(frames));
    for (int64_t i = 0; i < frames; ++i)
      for (int c = 0; c < channels; ++c)
        ch[c][i] = interleaved[i * channels + c];
    AudioBuffer buf(std::move(ch), sample_rate);
    buf.Validate();
    *out = new sx_buffer{std::move(buf)};
  });
}

void sx_buffer_free(sx_buffer* buffer) { delete buffer; }

int sx_buffer_channels(const sx_buffer* buffer) {
  return buffer ? buffer->data.channel_count() : 0;
}

int64_t sx_buffer_length(const sx_buffer* buffer) {
  return buffer ? buffer->data.length() : 0;
}

int sx_buffer_sample_rate(const sx_buffer* buffer) {
  return buffer ? buffer->data.sample_rate() : 0;
}

sx_status sx_buffer_copy_channel(const sx_buffer* buffer, int channel,
                                 float* out, int64_t capacity) {
  return Guard([&] {
    Require(buffer && out, StatusCode::kInvalidArgument, "null argument");
    Require(channel >= 0 && channel < buffer->data.channel_count(),
            StatusCode::kInvalidArgument, "channel out of range");
    Require(capacity >= buffer->data.length(), StatusCode::kInvalidArgument,
            "output capacity too small");
    const auto& ch = buffer->data.channel(channel);
    std::memcpy(out, ch.data(), sizeof(float) * ch.size());
  });
}

sx_status sx_buffer_downmix_mono(const sx_buffer* buffer, sx_buffer** out) {
  return Guard([&] {
    Require(buffer && out, StatusCode::kInvalidArgument, "null argument");
    *out = new sx_buffer{DownmixMono(buffer->data)};
  });
}

sx_status sx_score_2f(const sx_buffer* reference, const sx_buffer* probe,
                      int boundary_enabled, double playback_level_db,
                      const char* coeff_path, sx_score** out) {
  return Guard([&] {
    Require(reference && probe && out, StatusCode::kInvalidArgument,
            "null argument");
    const auto coeffs = ResolveCoefficients(coeff_path);
    const auto mode = boundary_enabled ? peaq::BoundaryMode::kEnabled
                                       : peaq::BoundaryMode::kDisabled;
    peaq::EarModelConfig ear;
    if (playback_level_db > 0) ear.playback_level_db = playback_level_db;
    *out = new sx_score{
        twof::ScoreItem(reference->data, probe->data, mode, coeffs, ear)};
  });
}

double sx_score_value(const sx_score* score) {
  return score ? score->data.value : 0.0;
}

int sx_score_channel_count(const sx_score* score) {
  return score ? static_cast<int>(score->data.per_channel.size()) : 0;
}

double sx_score_channel_value(const sx_score* score, int channel) {
  if (!score || channel < 0 ||
      channel >= static_cast<int>(score->data.per_channel.size()))
    return 0.0;
  return score->data.per_channel[channel];
}

int64_t sx_score_segment_count(const sx_score* score) {
  return score ? static_cast<int64_t>(score->data.per_segment.size()) : 0;
}

sx_status sx_score_segment(const sx_score* score, int64_t index, int* channel,
                           int64_t* offset, double* value) {
  return Guard([&] {
    Require(score, StatusCode::kInvalidArgument, "null score");
    Require(index >= 0 &&
                index < static_cast<int64_t>(score->data.per_segment.size()),
            StatusCode::kInvalidArgument, "segment index out of range");
    const auto& seg = score->data.per_segment[index];
    if (channel) *channel = seg.channel;
    if (offset) *offset = seg.offset;
    if (value) *value = seg.score;
  });
}

sx_status sx_score_segment_features(const sx_score* score, int64_t index,
                                    double* adb, double* avg_mod_diff_1,
                                    int64_t* frames_used,
                                    int64_t* frames_total) {
  return Guard([&] {
    Require(score, StatusCode::kInvalidArgument, "null score");
    Require(index >= 0 &&
                index < static_cast<int64_t>(score->data.per_segment.size()),
            StatusCode::kInvalidArgument, "segment index out of range");
    const auto& f = score->data.per_segment[index].features;
    if (adb) *adb = f.adb;
    if (avg_mod_diff_1) *avg_mod_diff_1 = f.avg_mod_diff_1;
    if (frames_used) *frames_used = f.frames_used;
    if (frames_total) *frames_total = f.frames_total;
  });
}

void sx_score_free(sx_score* score) { delete score; }

sx_status sx_compute_features(const sx_buffer* reference,
                              const sx_buffer* probe, int boundary_enabled,
                              double* adb, double* avg_mod_diff_1,
                              int64_t* frames_used, int64_t* frames_total) {
  return Guard([&] {
    Require(reference && probe, StatusCode::kInvalidArgument, "null argument");
    const auto mode = boundary_enabled ? peaq::BoundaryMode::kEnabled
                                       : peaq::BoundaryMode::kDisabled;
    const auto f = peaq::ComputeFeatures(reference->data, probe->data, mode);
    if (adb) *adb = f.adb;
    if (avg_mod_diff_1) *avg_mod_diff_1 = f.avg_mod_diff_1;
    if (frames_used) *frames_used = f.frames_used;
    if (frames_total) *frames_total = f.frames_total;
  });
}

sx_status sx_model_load(const char* path, sx_model** out) {
  return Guard([&] {
    Require(path && out, StatusCode::kInvalidArgument, "null argument");
    auto* model = new sx_model{nn::LoadCheckpoint(path), ""};
    model->hash_hex = HexU32(model->checkpoint.file_crc);
    *out = model;
  });
}

void sx_model_free(sx_model* model) { delete model; }

int sx_model_input_channels(const sx_model* model) {
  return model ? model->checkpoint.network->config().input_channels : 0;
}

uint64_t sx_model_seed(const sx_model* model) {
  return model ? model->checkpoint.seed : 0;
}

const char* sx_model_hash(const sx_model* model) {
  return model ? model->hash_hex.c_str() : "";
}

sx_status sx_predict(sx_model* model, sx_variant variant,
                     const sx_buffer* probe, const sx_buffer* reference,
                     sx_score** out) {
  return Guard([&] {
    Require(model && probe && out, StatusCode::kInvalidArgument,
            "null argument");
    *out = new sx_score{est::PredictQuality(
        *model->checkpoint.network, ToVariant(variant), probe->data,
        reference ? &reference->data : nullptr)};
  });
}

sx_status sx_map_gain(double q_hat, const char* preset, double k_db,
                      sx_remix_plan* out) {
  return Guard([&] {
    Require(preset && out, StatusCode::kInvalidArgument, "null argument");
    const auto mapping = remix::GainMapping::Preset(preset, k_db);
    const auto plan = remix::MapGain(q_hat, mapping);
    out->q_hat = plan.q_hat;
    out->g_db = plan.g_db;
    out->gamma = plan.gamma;
  });
}

sx_status sx_remix_apply(const sx_buffer* mixture, const sx_buffer* separated,
                         double gamma, sx_buffer** out) {
  return Guard([&] {
    Require(mixture && separated && out, StatusCode::kInvalidArgument,
            "null argument");
    remix::RemixPlan plan;
    plan.gamma = gamma;
    *out = new sx_buffer{remix::ApplyRemix(mixture->data, separated->data, plan)};
  });
}

sx_status sx_synth_corpus(const char* speech_dir, const char* background_dir,
                          const char* config_path, uint64_t seed,
                          const char* out_dir, sx_synth_result* out) {
  return Guard([&] {
    Require(speech_dir && background_dir && out_dir && out,
            StatusCode::kInvalidArgument, "null argument");
    KvConfig kv;
    if (config_path && *config_path) kv = KvConfig::Load(config_path);
    const auto config = datagen::CorpusConfig::FromKv(kv);
    const auto result =
        datagen::BuildCorpus(speech_dir, background_dir, config, seed, out_dir);
    out->manifest_path = DupString(result.manifest_path);
    out->items = result.items;
    out->rows = result.rows;
  });
}

sx_status sx_train(const char* train_manifest, const char* valid_manifest,
                   sx_variant variant, const sx_train_options* options,
                   const char* checkpoint_out, const char* log_out,
                   sx_train_progress progress, void* user) {
  return Guard([&] {
    Require(train_manifest && valid_manifest && checkpoint_out,
            StatusCode::kInvalidArgument, "null argument");
    const est::Variant var = ToVariant(variant);

    nn::TrainOptions train_options;
    if (options) {
      if (options->epochs > 0) train_options.epochs = options->epochs;
      if (options->batch_size > 0) train_options.batch_size = options->batch_size;
      train_options.seed = options->seed;
    }

    nn::NetworkConfig config;
    if (options && options->network_config_path &&
        *options->network_config_path) {
      std::ifstream in(options->network_config_path);
      Require(in.good(), StatusCode::kIoError,
              std::string("cannot open network config: ") +
                  options->network_config_path);
      std::string text((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
      config = nn::NetworkConfig::Deserialize(text);
    }
    config.input_channels = est::VariantChannels(var);

    datagen::ManifestDataset train_set(datagen::ReadManifest(train_manifest),
                                       var, config.input_length);
    datagen::ManifestDataset valid_set(datagen::ReadManifest(valid_manifest),
                                       var, config.input_length);

    nn::Network<float> network(config);
    network.Init(train_options.seed);
    nn::Adadelta<float> optimizer;

    std::ofstream log;
    if (log_out && *log_out) {
      log.open(log_out, std::ios::trunc);
      Require(log.good(), StatusCode::kIoError,
              std::string("cannot write training log: ") + log_out);
      log << "{\"type\":\"meta\",\"seed\":" << train_options.seed
          << ",\"config_hash\":\"" << HexU32(config.Hash())
          << "\",\"variant\":\"" << est::VariantName(var) << "\"}\n";
    }

    train_options.on_epoch = [&](const nn::TrainRecord& r) -> bool {
      if (log.is_open()) {
        log << "{\"epoch\":" << r.epoch << ",\"train_mse\":" << r.train_mse
            << ",\"valid_mse\":" << r.valid_mse << ",\"lr_scale\":" << r.lr_scale
            << "}\n";
        log.flush();
      }
      if (progress)
        return progress(r.epoch, r.train_mse, r.valid_mse, r.lr_scale, user) != 0;
      return true;
    };

    nn::Train(&network, &optimizer, train_set, valid_set, train_options);
    nn::SaveCheckpoint(network, &optimizer, checkpoint_out);
  });
}

sx_status sx_evaluate(const char* predictions_path,
                      const char* references_path, sx_eval_report** out) {
  return Guard([&] {
    Require(predictions_path && references_path && out,
            StatusCode::kInvalidArgument, "null argument");
    const auto predictions = eval::ReadRecords(predictions_path);
    const auto references = eval::ReadRecords(references_path);
    *out = new sx_eval_report{eval::EvaluateRun(predictions, references)};
  });
}

int64_t sx_eval_report_rows(const sx_eval_report* report) {
  return report ? static_cast<int64_t>(report->data.rows.size()) : 0;
}

sx_status sx_eval_report_row(const sx_eval_report* report, int64_t index,
                             const char** variant, const char** split,
                             int64_t* pairs, double* pearson, double* slope,
                             double* mae, double* rmse) {
  return Guard([&] {
    Require(report, StatusCode::kInvalidArgument, "null report");
    Require(index >= 0 &&
                index < static_cast<int64_t>(report->data.rows.size()),
            StatusCode::kInvalidArgument, "row index out of range");
    const auto& r = report->data.rows[index];
    if (variant) *variant = r.variant.c_str();
    if (split) *split = r.split.c_str();
    if (pairs) *pairs = r.pairs;
    if (pearson) *pearson = r.pearson;
    if (slope) *slope = r.slope;
    if (mae) *mae = r.mae;
    if (rmse) *rmse = r.rmse;
  });
}

int64_t sx_eval_report_aggregates(const sx_eval_report* report) {
  return report ? static_cast<int64_t>(report->data.aggregated.size()) : 0;
}

sx_status sx_eval_report_aggregate(const sx_eval_report* report, int64_t index,
                                   const char** variant, double* fisher_rho) {
  return Guard([&] {
    Require(report, StatusCode::kInvalidArgument, "null report");
    Require(index >= 0 &&
                index < static_cast<int64_t>(report->data.aggregated.size()),
            StatusCode::kInvalidArgument, "aggregate index out of range");
    const auto& [name, rho] = report->data.aggregated[index];
    if (variant) *variant = name.c_str();
    if (fisher_rho) *fisher_rho = rho;
  });
}

sx_status sx_eval_report_table(const sx_eval_report* report, char** out) {
  return Guard([&] {
    Require(report && out, StatusCode::kInvalidArgument, "null argument");
    *out = DupString(eval::FormatReportTable(report->data));
  });
}

void sx_eval_report_free(sx_eval_report* report) { delete report; }

void sx_string_free(char* s) { std::free(s); }

}  // extern "C"
