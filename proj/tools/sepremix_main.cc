// tools/sepremix_main.cc

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

// Command line front end over the sepremix C API: 2f scoring, DNN quality
// prediction, quality-controlled remixing, corpus synthesis, training, and
// evaluation. Human-readable results go to stdout; machine records are
// line-delimited JSON behind --report.

#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sepremix.h"

namespace {

using nlohmann::json;

int FailWith(sx_status status, const std::string& context) {
  std::fprintf(stderr, "sepremix: %s: %s\n", context.c_str(), sx_last_error());
  return static_cast<int>(status);
}

struct BufferDeleter {
  void operator()(sx_buffer* b) const { sx_buffer_free(b); }
};
struct ScoreDeleter {
  void operator()(sx_score* s) const { sx_score_free(s); }
};
struct ModelDeleter {
  void operator()(sx_model* m) const { sx_model_free(m); }
};
using BufferPtr = std::unique_ptr<sx_buffer, BufferDeleter>;
using ScorePtr = std::unique_ptr<sx_score, ScoreDeleter>;
using ModelPtr = std::unique_ptr<sx_model, ModelDeleter>;

BufferPtr LoadBufferOrExit(const std::string& path, int* exit_code) {
  sx_buffer* raw = nullptr;
  const sx_status st = sx_buffer_load_wav(path.c_str(), &raw);
  if (st != SX_OK) {
    *exit_code = FailWith(st, "loading " + path);
    return nullptr;
  }
  return BufferPtr(raw);
}

json SegmentsJson(const sx_score* score, bool with_features) {
  json segments = json::array();
  const int64_t n = sx_score_segment_count(score);
  for (int64_t i = 0; i < n; ++i) {
    int channel = 0;
    int64_t offset = 0;
    double value = 0.0;
    sx_score_segment(score, i, &channel, &offset, &value);
    json seg;
    seg["channel"] = channel;
    seg["offset"] = offset;
    seg["value"] = value;
    if (with_features) {
      double adb = 0.0, amd1 = 0.0;
      int64_t used = 0, total = 0;
      sx_score_segment_features(score, i, &adb, &amd1, &used, &total);
      seg["adb"] = adb;
      seg["avg_mod_diff_1"] = amd1;
      seg["frames_used"] = used;
      seg["frames_total"] = total;
    }
    segments.push_back(seg);
  }
  return segments;
}

bool WriteReportLines(const std::string& path, const std::vector<json>& lines) {
  std::ofstream out(path, std::ios::trunc);
  if (!out.good()) return false;
  for (const auto& j : lines) out << j.dump() << "\n";
  return out.good();
}

int CmdScore2f(const std::string& reference_path, const std::string& probe_path,
               const std::string& boundary, double playback_level_db,
               const std::string& coeffs, const std::string& report_path,
               const std::string& features_path) {
  int exit_code = 0;
  BufferPtr reference = LoadBufferOrExit(reference_path, &exit_code);
  if (!reference) return exit_code;
  BufferPtr probe = LoadBufferOrExit(probe_path, &exit_code);
  if (!probe) return exit_code;

  const int boundary_enabled = boundary == "on" ? 1 : 0;
  sx_score* raw = nullptr;
  const sx_status st =
      sx_score_2f(reference.get(), probe.get(), boundary_enabled,
                  playback_level_db, coeffs.empty() ? nullptr : coeffs.c_str(),
                  &raw);
  if (st != SX_OK) return FailWith(st, "scoring");
  ScorePtr score(raw);

  std::printf("2f score: %.4f\n", sx_score_value(score.get()));
  for (int c = 0; c < sx_score_channel_count(score.get()); ++c)
    std::printf("  channel %d: %.4f\n", c,
                sx_score_channel_value(score.get(), c));
  const int64_t segments = sx_score_segment_count(score.get());
  for (int64_t i = 0; i < segments; ++i) {
    int channel = 0;
    int64_t offset = 0;
    double value = 0.0;
    sx_score_segment(score.get(), i, &channel, &offset, &value);
    std::printf("  segment ch%d @%lld: %.4f\n", channel,
                static_cast<long long>(offset), value);
  }

  json record;
  record["id"] = std::filesystem::path(probe_path).filename().string();
  record["value"] = sx_score_value(score.get());
  record["boundary"] = boundary;
  record["playback_level_db"] = playback_level_db > 0 ? playback_level_db : 92.0;
  record["per_segment"] = SegmentsJson(score.get(), false);
  if (!report_path.empty() && !WriteReportLines(report_path, {record}))
    return FailWith(SX_ERR_IO, "writing report " + report_path);

  if (!features_path.empty()) {
    std::vector<json> lines;
    json meta;
    meta["type"] = "meta";
    meta["boundary"] = boundary;
    meta["playback_level_db"] =
        playback_level_db > 0 ? playback_level_db : 92.0;
    lines.push_back(meta);
    const json segs = SegmentsJson(score.get(), true);
    for (const auto& seg : segs) {
      json row;
      row["id"] = record["id"].get<std::string>() + "#" +
                  std::to_string(seg["offset"].get<int64_t>()) + "ch" +
                  std::to_string(seg["channel"].get<int>());
      row["adb"] = seg["adb"];
      row["avg_mod_diff_1"] = seg["avg_mod_diff_1"];
      row["frames_used"] = seg["frames_used"];
      row["frames_total"] = seg["frames_total"];
      row["mode"] = boundary == "on" ? "enabled" : "disabled";
      lines.push_back(row);
    }
    if (!WriteReportLines(features_path, lines))
      return FailWith(SX_ERR_IO, "writing features " + features_path);
  }
  return 0;
}

int CmdPredict(const std::string& checkpoint, const std::string& variant_name,
               const std::string& probe_path, const std::string& reference_path,
               const std::string& report_path, const std::string& item_id) {
  sx_variant variant = SX_VARIANT_NON_INTRUSIVE;
  if (variant_name == "i" || variant_name == "intrusive")
    variant = SX_VARIANT_INTRUSIVE;
  else if (variant_name == "n" || variant_name == "non_intrusive")
    variant = SX_VARIANT_NON_INTRUSIVE;
  else if (variant_name == "r" || variant_name == "reference_free")
    variant = SX_VARIANT_REFERENCE_FREE;
  else {
    std::fprintf(stderr, "sepremix: unknown variant '%s'\n",
                 variant_name.c_str());
    return static_cast<int>(SX_ERR_INVALID);
  }

  const bool wants_reference = variant != SX_VARIANT_REFERENCE_FREE;
  if (wants_reference && reference_path.empty()) {
    std::fprintf(stderr, "sepremix: variant '%s' requires a reference WAV\n",
                 variant_name.c_str());
    return static_cast<int>(SX_ERR_INVALID);
  }
  if (!wants_reference && !reference_path.empty()) {
    std::fprintf(stderr,
                 "sepremix: reference-free variant takes no reference WAV\n");
    return static_cast<int>(SX_ERR_INVALID);
  }

  sx_model* raw_model = nullptr;
  sx_status st = sx_model_load(checkpoint.c_str(), &raw_model);
  if (st != SX_OK) return FailWith(st, "loading checkpoint " + checkpoint);
  ModelPtr model(raw_model);

  int exit_code = 0;
  BufferPtr probe = LoadBufferOrExit(probe_path, &exit_code);
  if (!probe) return exit_code;
  BufferPtr reference;
  if (wants_reference) {
    reference = LoadBufferOrExit(reference_path, &exit_code);
    if (!reference) return exit_code;
  }

  sx_score* raw_score = nullptr;
  st = sx_predict(model.get(), variant, probe.get(), reference.get(),
                  &raw_score);
  if (st != SX_OK) return FailWith(st, "prediction");
  ScorePtr score(raw_score);

  std::printf("q_hat: %.4f (variant %s, checkpoint %s)\n",
              sx_score_value(score.get()), variant_name.c_str(),
              sx_model_hash(model.get()));
  const int64_t segments = sx_score_segment_count(score.get());
  for (int64_t i = 0; i < segments; ++i) {
    int channel = 0;
    int64_t offset = 0;
    double value = 0.0;
    sx_score_segment(score.get(), i, &channel, &offset, &value);
    std::printf("  segment ch%d @%lld: %.4f\n", channel,
                static_cast<long long>(offset), value);
  }

  if (!report_path.empty()) {
    json record;
    record["id"] = item_id.empty()
                       ? std::filesystem::path(probe_path).filename().string()
                       : item_id;
    record["variant"] =
        variant == SX_VARIANT_INTRUSIVE
            ? "iDNN2f"
            : (variant == SX_VARIANT_NON_INTRUSIVE ? "nDNN2f" : "rDNN2f");
    record["q_hat"] = sx_score_value(score.get());
    record["checkpoint"] = sx_model_hash(model.get());
    record["per_segment"] = SegmentsJson(score.get(), false);
    if (!WriteReportLines(report_path, {record}))
      return FailWith(SX_ERR_IO, "writing report " + report_path);
  }
  return 0;
}

int CmdRemix(const std::string& mixture_path, const std::string& separated_path,
             const std::string& checkpoint, const std::string& preset,
             double k_db, const std::string& out_path,
             const std::string& report_path) {
  sx_model* raw_model = nullptr;
  sx_status st = sx_model_load(checkpoint.c_str(), &raw_model);
  if (st != SX_OK) return FailWith(st, "loading checkpoint " + checkpoint);
  ModelPtr model(raw_model);

  int exit_code = 0;
  BufferPtr mixture = LoadBufferOrExit(mixture_path, &exit_code);
  if (!mixture) return exit_code;
  BufferPtr separated = LoadBufferOrExit(separated_path, &exit_code);
  if (!separated) return exit_code;

  // Non-intrusive estimate: probe = separated dialogue, reference = mixture.
  sx_score* raw_score = nullptr;
  st = sx_predict(model.get(), SX_VARIANT_NON_INTRUSIVE, separated.get(),
                  mixture.get(), &raw_score);
  if (st != SX_OK) return FailWith(st, "prediction");
  ScorePtr score(raw_score);

  sx_remix_plan plan;
  st = sx_map_gain(sx_score_value(score.get()), preset.c_str(), k_db, &plan);
  if (st != SX_OK) return FailWith(st, "gain mapping");

  sx_buffer* raw_out = nullptr;
  st = sx_remix_apply(mixture.get(), separated.get(), plan.gamma, &raw_out);
  if (st != SX_OK) return FailWith(st, "remix");
  BufferPtr remixed(raw_out);

  st = sx_buffer_save_wav(remixed.get(), out_path.c_str(), 32, 1);
  if (st != SX_OK) return FailWith(st, "writing " + out_path);

  std::printf("q_hat: %.4f  g: %.4f dB  gamma: %.6f  -> %s\n", plan.q_hat,
              plan.g_db, plan.gamma, out_path.c_str());

  if (!report_path.empty()) {
    json record;
    record["id"] = std::filesystem::path(mixture_path).filename().string();
    record["q_hat"] = plan.q_hat;
    record["preset"] = preset;
    record["k_db"] = k_db;
    record["g_db"] = plan.g_db;
    record["gamma"] = plan.gamma;
    record["output"] = out_path;
    record["checkpoint"] = sx_model_hash(model.get());
    if (!WriteReportLines(report_path, {record}))
      return FailWith(SX_ERR_IO, "writing report " + report_path);
  }
  return 0;
}

int CmdSynth(const std::string& speech_dir, const std::string& background_dir,
             const std::string& out_dir, const std::string& config,
             uint64_t seed) {
  sx_synth_result result{};
  const sx_status st =
      sx_synth_corpus(speech_dir.c_str(), background_dir.c_str(),
                      config.empty() ? nullptr : config.c_str(), seed,
                      out_dir.c_str(), &result);
  if (st != SX_OK) return FailWith(st, "corpus synthesis");
  std::printf("manifest: %s\nitems: %lld\nrows: %lld\n", result.manifest_path,
              static_cast<long long>(result.items),
              static_cast<long long>(result.rows));
  sx_string_free(result.manifest_path);
  return 0;
}

int CmdTrain(const std::string& train_manifest, const std::string& valid_manifest,
             const std::string& checkpoint_out, const std::string& variant_name,
             int epochs, int batch, uint64_t seed, const std::string& log_path,
             const std::string& network_config) {
  sx_variant variant = SX_VARIANT_NON_INTRUSIVE;
  if (variant_name == "i" || variant_name == "intrusive")
    variant = SX_VARIANT_INTRUSIVE;
  else if (variant_name == "r" || variant_name == "reference_free")
    variant = SX_VARIANT_REFERENCE_FREE;

  sx_train_options options{};
  options.epochs = epochs;
  options.batch_size = batch;
  options.seed = seed;
  options.network_config_path =
      network_config.empty() ? nullptr : network_config.c_str();

  auto progress = [](int epoch, double train_mse, double valid_mse,
                     double lr_scale, void*) -> int {
    std::printf("epoch %3d  train_mse %10.4f  valid_mse %10.4f  lr %.6f\n",
                epoch, train_mse, valid_mse, lr_scale);
    std::fflush(stdout);
    return 1;
  };

  const sx_status st = sx_train(
      train_manifest.c_str(), valid_manifest.c_str(), variant, &options,
      checkpoint_out.c_str(), log_path.empty() ? nullptr : log_path.c_str(),
      progress, nullptr);
  if (st != SX_OK) return FailWith(st, "training");
  std::printf("checkpoint: %s\n", checkpoint_out.c_str());
  return 0;
}

int CmdEval(const std::string& predictions, const std::string& references,
            const std::string& report_path) {
  sx_eval_report* raw = nullptr;
  const sx_status st =
      sx_evaluate(predictions.c_str(), references.c_str(), &raw);
  if (st != SX_OK) return FailWith(st, "evaluation");
  std::unique_ptr<sx_eval_report, void (*)(sx_eval_report*)> report(
      raw, sx_eval_report_free);

  char* table = nullptr;
  sx_eval_report_table(report.get(), &table);
  std::printf("%s", table);
  sx_string_free(table);

  if (!report_path.empty()) {
    std::vector<json> lines;
    const int64_t rows = sx_eval_report_rows(report.get());
    for (int64_t i = 0; i < rows; ++i) {
      const char* variant = nullptr;
      const char* split = nullptr;
      int64_t pairs = 0;
      double rho = 0, slope = 0, mae = 0, rmse = 0;
      sx_eval_report_row(report.get(), i, &variant, &split, &pairs, &rho,
                         &slope, &mae, &rmse);
      json j;
      j["variant"] = variant;
      j["split"] = split;
      j["pairs"] = pairs;
      j["pearson"] = rho;
      j["slope"] = slope;
      j["mae"] = mae;
      j["rmse"] = rmse;
      lines.push_back(j);
    }
    const int64_t aggs = sx_eval_report_aggregates(report.get());
    for (int64_t i = 0; i < aggs; ++i) {
      const char* variant = nullptr;
      double rho = 0;
      sx_eval_report_aggregate(report.get(), i, &variant, &rho);
      json j;
      j["variant"] = variant;
      j["split"] = "fisher-z";
      j["pearson"] = rho;
      lines.push_back(j);
    }
    if (!WriteReportLines(report_path, lines))
      return FailWith(SX_ERR_IO, "writing report " + report_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sepremix: quality-controlled remixing of separated dialogue"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = auto)");

  // score2f
  auto* score2f = app.add_subcommand("score2f", "2f quality of probe vs reference");
  std::string s_ref, s_probe, s_boundary = "off", s_coeffs, s_report, s_features;
  double s_level = 0.0;
  score2f->add_option("reference", s_ref, "reference WAV")->required();
  score2f->add_option("probe", s_probe, "probe WAV")->required();
  score2f->add_option("--boundary", s_boundary, "boundary detection: on|off")
      ->check(CLI::IsMember({"on", "off"}));
  score2f->add_option("--playback-level", s_level, "dB SPL at full scale");
  score2f->add_option("--coeffs", s_coeffs, "coefficient file");
  score2f->add_option("--report", s_report, "machine-readable report file");
  score2f->add_option("--features-out", s_features, "per-segment feature dump");

  // predict
  auto* predict = app.add_subcommand("predict", "DNN quality estimate");
  std::string p_ckpt, p_variant = "n", p_probe, p_ref, p_report, p_id;
  predict->add_option("checkpoint", p_ckpt, "model checkpoint")->required();
  predict->add_option("probe", p_probe, "probe WAV")->required();
  predict->add_option("reference", p_ref, "reference WAV (variant i/n)");
  predict->add_option("-v,--variant", p_variant,
                      "i|n|r (intrusive, non-intrusive, reference-free)");
  predict->add_option("--report", p_report, "machine-readable report file");
  predict->add_option("--id", p_id, "item id for the report");

  // remix
  auto* remix = app.add_subcommand("remix", "estimate quality and remix");
  std::string r_mix, r_sep, r_ckpt, r_preset = "refined", r_out, r_report;
  double r_k = 0.0;
  remix->add_option("mixture", r_mix, "input mixture WAV")->required();
  remix->add_option("separated", r_sep, "separated dialogue WAV")->required();
  remix->add_option("--checkpoint", r_ckpt, "nDNN2f checkpoint")->required();
  remix->add_option("--preset", r_preset, "gain mapping: initial|refined")
      ->check(CLI::IsMember({"initial", "refined"}));
  remix->add_option("--k", r_k, "mapping offset k in dB");
  remix->add_option("--out", r_out, "output WAV")->required();
  remix->add_option("--report", r_report, "machine-readable report file");

  // synth
  auto* synth = app.add_subcommand("synth", "synthesize a labeled corpus");
  std::string y_speech, y_bg, y_out, y_config;
  uint64_t y_seed = 1;
  synth->add_option("speech_dir", y_speech, "clean speech stems")->required();
  synth->add_option("background_dir", y_bg, "background stems")->required();
  synth->add_option("out_dir", y_out, "output directory")->required();
  synth->add_option("--config", y_config, "corpus config file");
  synth->add_option("--seed", y_seed, "generation seed");

  // train
  auto* train = app.add_subcommand("train", "train an estimator");
  std::string t_train, t_valid, t_out, t_variant = "n", t_log, t_netcfg;
  int t_epochs = 50, t_batch = 64;
  uint64_t t_seed = 1;
  train->add_option("train_manifest", t_train, "training manifest")->required();
  train->add_option("valid_manifest", t_valid, "validation manifest")->required();
  train->add_option("checkpoint_out", t_out, "output checkpoint")->required();
  train->add_option("-v,--variant", t_variant, "i|n|r");
  train->add_option("--epochs", t_epochs, "training epochs");
  train->add_option("--batch", t_batch, "batch size before augmentation");
  train->add_option("--seed", t_seed, "training seed");
  train->add_option("--log", t_log, "epoch log file (JSON lines)");
  train->add_option("--network-config", t_netcfg, "reduced architecture file");

  // eval
  auto* eval = app.add_subcommand("eval", "agreement statistics");
  std::string e_pred, e_ref, e_report;
  eval->add_option("predictions", e_pred, "prediction records")->required();
  eval->add_option("references", e_ref, "reference records")->required();
  eval->add_option("--report", e_report, "machine-readable report file");

  CLI11_PARSE(app, argc, argv);

  if (threads > 0) sx_set_threads(threads);

  if (score2f->parsed())
    return CmdScore2f(s_ref, s_probe, s_boundary, s_level, s_coeffs, s_report,
                      s_features);
  if (predict->parsed())
    return CmdPredict(p_ckpt, p_variant, p_probe, p_ref, p_report, p_id);
  if (remix->parsed())
    return CmdRemix(r_mix, r_sep, r_ckpt, r_preset, r_k, r_out, r_report);
  if (synth->parsed()) return CmdSynth(y_speech, y_bg, y_out, y_config, y_seed);
  if (train->parsed())
    return CmdTrain(t_train, t_valid, t_out, t_variant, t_epochs, t_batch,
                    t_seed, t_log, t_netcfg);
  if (eval->parsed()) return CmdEval(e_pred, e_ref, e_report);
  return 0;
}
