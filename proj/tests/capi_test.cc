// tests/capi_test.cc

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

// Exercises the shared-library surface exactly as an external client would:
// only include/sepremix.h plus test fixtures on disk.

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "sepremix.h"

namespace fs = std::filesystem;

namespace {

fs::path Root() {
  const fs::path p = fs::temp_directory_path() / "sepremix_capi_test";
  fs::create_directories(p);
  return p;
}

std::vector<float> Noise(double amplitude, int64_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  std::vector<float> out(n);
  for (auto& v : out) v = static_cast<float>(dist(rng));
  return out;
}

std::vector<float> Speechish(double amplitude, int64_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double f0 = 100.0 + 100.0 * u(rng);
  std::vector<float> out(n);
  for (int64_t i = 0; i < n; ++i) {
    const double t = i / 48000.0;
    const double env = std::max(0.0, std::sin(2 * 3.14159265 * 3.0 * t));
    out[i] = static_cast<float>(amplitude * env *
                                (std::sin(2 * 3.14159265 * f0 * t) +
                                 0.4 * std::sin(2 * 3.14159265 * 2 * f0 * t)));
  }
  return out;
}

sx_buffer* MakeMonoBuffer(const std::vector<float>& samples) {
  sx_buffer* buf = nullptr;
  REQUIRE(sx_buffer_create(samples.data(), samples.size(), 1, 48000, &buf) ==
          SX_OK);
  return buf;
}

void WriteWav(const fs::path& path, const std::vector<float>& samples) {
  sx_buffer* buf = MakeMonoBuffer(samples);
  REQUIRE(sx_buffer_save_wav(buf, path.string().c_str(), 32, 1) == SX_OK);
  sx_buffer_free(buf);
}

}  // namespace

TEST_CASE("buffer surface") {
  const auto samples = Noise(0.8, 5000, 1);
  const fs::path path = Root() / "buffer.wav";
  WriteWav(path, samples);

  sx_buffer* loaded = nullptr;
  REQUIRE(sx_buffer_load_wav(path.string().c_str(), &loaded) == SX_OK);
  CHECK(sx_buffer_channels(loaded) == 1);
  CHECK(sx_buffer_length(loaded) == 5000);
  CHECK(sx_buffer_sample_rate(loaded) == 48000);

  std::vector<float> copy(5000);
  REQUIRE(sx_buffer_copy_channel(loaded, 0, copy.data(), copy.size()) == SX_OK);
  for (int i = 0; i < 5000; ++i) CHECK(copy[i] == samples[i]);

  sx_buffer* mono = nullptr;
  REQUIRE(sx_buffer_downmix_mono(loaded, &mono) == SX_OK);
  CHECK(sx_buffer_length(mono) == 5000);
  sx_buffer_free(mono);
  sx_buffer_free(loaded);

  CHECK(sx_buffer_load_wav("/nonexistent.wav", &loaded) == SX_ERR_IO);
  CHECK(std::strlen(sx_last_error()) > 0);
}

TEST_CASE("2f scoring through the C surface") {
  const auto speech = Speechish(0.4, 192000, 2);
  sx_buffer* reference = MakeMonoBuffer(speech);
  sx_buffer* probe = MakeMonoBuffer(speech);

  sx_score* score = nullptr;
  REQUIRE(sx_score_2f(reference, probe, 0, 0.0, nullptr, &score) == SX_OK);
  CHECK(sx_score_value(score) == doctest::Approx(100.0));
  CHECK(sx_score_segment_count(score) == 1);
  double adb = -1, amd = -1;
  int64_t used = 0, total = 0;
  REQUIRE(sx_score_segment_features(score, 0, &adb, &amd, &used, &total) ==
          SX_OK);
  CHECK(adb == 0.0);
  CHECK(amd <= 1e-6);
  CHECK(used == total);
  sx_score_free(score);

  // Whole-item feature pair.
  REQUIRE(sx_compute_features(reference, probe, 0, &adb, &amd, &used, &total) ==
          SX_OK);
  CHECK(adb == 0.0);

  // Silent reference, noisy probe: legacy mode sees nothing.
  const auto silence = std::vector<float>(192000, 0.0f);
  const auto noise = Noise(0.3, 192000, 3);
  sx_buffer* silent_ref = MakeMonoBuffer(silence);
  sx_buffer* noisy_probe = MakeMonoBuffer(noise);
  sx_score* legacy = nullptr;
  sx_score* adapted = nullptr;
  REQUIRE(sx_score_2f(silent_ref, noisy_probe, 1, 0.0, nullptr, &legacy) == SX_OK);
  REQUIRE(sx_score_2f(silent_ref, noisy_probe, 0, 0.0, nullptr, &adapted) == SX_OK);
  CHECK(sx_score_value(adapted) < sx_score_value(legacy));
  sx_score_free(legacy);
  sx_score_free(adapted);

  // Length mismatch is a format error.
  sx_buffer* shorter = MakeMonoBuffer(Noise(0.3, 96000, 4));
  sx_score* bad = nullptr;
  CHECK(sx_score_2f(reference, shorter, 0, 0.0, nullptr, &bad) == SX_ERR_FORMAT);
  sx_buffer_free(shorter);
  sx_buffer_free(silent_ref);
  sx_buffer_free(noisy_probe);
  sx_buffer_free(reference);
  sx_buffer_free(probe);
}

TEST_CASE("gain mapping and remix through the C surface") {
  sx_remix_plan plan{};
  REQUIRE(sx_map_gain(60.0, "refined", 0.0, &plan) == SX_OK);
  CHECK(plan.g_db == doctest::Approx(14.33).epsilon(1e-9));
  CHECK(plan.gamma == doctest::Approx(std::pow(10.0, -14.33 / 20.0)));
  REQUIRE(sx_map_gain(60.0, "initial", 0.0, &plan) == SX_OK);
  CHECK(plan.g_db == doctest::Approx(20.32).epsilon(1e-9));
  CHECK(sx_map_gain(60.0, "bogus", 0.0, &plan) == SX_ERR_INVALID);
  CHECK(sx_map_gain(101.0, "refined", 0.0, &plan) == SX_ERR_INVALID);

  const auto speech = Speechish(0.4, 48000, 5);
  const auto background = Noise(0.2, 48000, 6);
  std::vector<float> mixture(48000);
  for (int i = 0; i < 48000; ++i) mixture[i] = speech[i] + background[i];
  sx_buffer* mix = MakeMonoBuffer(mixture);
  sx_buffer* sep = MakeMonoBuffer(speech);
  sx_buffer* out = nullptr;
  REQUIRE(sx_remix_apply(mix, sep, 1.0, &out) == SX_OK);
  std::vector<float> y(48000);
  REQUIRE(sx_buffer_copy_channel(out, 0, y.data(), y.size()) == SX_OK);
  for (int i = 0; i < 48000; ++i) CHECK(y[i] == mixture[i]);
  sx_buffer_free(out);
  sx_buffer_free(mix);
  sx_buffer_free(sep);
}

TEST_CASE("synth, train, predict, evaluate through the C surface") {
  const fs::path root = Root() / "pipeline";
  fs::remove_all(root);
  fs::create_directories(root / "speech");
  fs::create_directories(root / "background");
  WriteWav(root / "speech" / "s1.wav", Speechish(0.4, 96000, 7));
  WriteWav(root / "speech" / "s2.wav", Speechish(0.4, 96000, 8));
  WriteWav(root / "background" / "b1.wav", Noise(0.2, 96000, 9));

  {
    std::ofstream cfg(root / "corpus.cfg");
    cfg << "items = 2\ncrop_seconds = 1\nsilence_seconds = 0\n";
  }

  sx_synth_result synth{};
  REQUIRE(sx_synth_corpus((root / "speech").string().c_str(),
                          (root / "background").string().c_str(),
                          (root / "corpus.cfg").string().c_str(), 7,
                          (root / "corpus").string().c_str(), &synth) == SX_OK);
  CHECK(synth.rows == 30);
  const std::string manifest = synth.manifest_path;
  sx_string_free(synth.manifest_path);

  {
    std::ofstream cfg(root / "net.cfg");
    cfg << "front_filters = 8\nfront_kernel = 256\nfront_stride = 4096\n"
        << "block_count = 2\nblock_filters = 4\ndense_units = 8\n";
  }

  sx_train_options options{};
  options.epochs = 2;
  options.batch_size = 8;
  options.seed = 11;
  const std::string net_cfg = (root / "net.cfg").string();
  options.network_config_path = net_cfg.c_str();
  const std::string checkpoint = (root / "model.ckpt").string();
  const std::string log = (root / "train.log").string();

  int epochs_seen = 0;
  auto progress = [](int, double, double, double, void* user) -> int {
    ++*static_cast<int*>(user);
    return 1;
  };
  REQUIRE(sx_train(manifest.c_str(), manifest.c_str(),
                   SX_VARIANT_NON_INTRUSIVE, &options, checkpoint.c_str(),
                   log.c_str(), progress, &epochs_seen) == SX_OK);
  CHECK(epochs_seen == 2);

  sx_model* model = nullptr;
  REQUIRE(sx_model_load(checkpoint.c_str(), &model) == SX_OK);
  CHECK(sx_model_input_channels(model) == 2);
  CHECK(std::strlen(sx_model_hash(model)) == 8);

  sx_buffer* probe = MakeMonoBuffer(Speechish(0.4, 192000, 10));
  sx_buffer* mixture = MakeMonoBuffer(Speechish(0.4, 192000, 11));
  sx_score* prediction = nullptr;
  REQUIRE(sx_predict(model, SX_VARIANT_NON_INTRUSIVE, probe, mixture,
                     &prediction) == SX_OK);
  CHECK(sx_score_value(prediction) >= 0.0);
  CHECK(sx_score_value(prediction) <= 100.0);
  sx_score_free(prediction);

  // Variant/checkpoint mismatch surfaces as SX_ERR_CHECKPOINT.
  sx_score* bad = nullptr;
  CHECK(sx_predict(model, SX_VARIANT_REFERENCE_FREE, probe, nullptr, &bad) ==
        SX_ERR_CHECKPOINT);
  sx_buffer_free(probe);
  sx_buffer_free(mixture);
  sx_model_free(model);

  // Evaluating the manifest against itself is a perfect join.
  sx_eval_report* report = nullptr;
  REQUIRE(sx_evaluate(manifest.c_str(), manifest.c_str(), &report) == SX_OK);
  REQUIRE(sx_eval_report_rows(report) >= 1);
  double rho = 0.0;
  REQUIRE(sx_eval_report_row(report, 0, nullptr, nullptr, nullptr, &rho,
                             nullptr, nullptr, nullptr) == SX_OK);
  CHECK(rho == doctest::Approx(1.0));
  char* table = nullptr;
  REQUIRE(sx_eval_report_table(report, &table) == SX_OK);
  CHECK(std::strlen(table) > 0);
  sx_string_free(table);
  sx_eval_report_free(report);

  fs::remove_all(root);
}
