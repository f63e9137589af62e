// tests/cli_test.cc

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

// Drives the installed command line binary end to end. Fixtures are built
// with the core library; the binary itself is the unit under test.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "core/audio_buffer.h"
#include "core/nn/checkpoint.h"
#include "core/nn/network.h"
#include "core/wav_io.h"
#include "test_signals.h"

using namespace sepremix;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kCliPath = SEPREMIX_CLI_PATH;

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
  std::string stderr_text;
};

RunResult RunCli(const std::string& args) {
  static int counter = 0;
  const fs::path out = fs::temp_directory_path() /
                       ("sepremix_cli_out_" + std::to_string(counter++));
  const fs::path err = out.string() + ".err";
  const std::string command = std::string(kCliPath) + " " + args + " > " +
                              out.string() + " 2> " + err.string();
  const int raw = std::system(command.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(raw);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  };
  result.stdout_text = slurp(out);
  result.stderr_text = slurp(err);
  fs::remove(out);
  fs::remove(err);
  return result;
}

fs::path Root() {
  const fs::path p = fs::temp_directory_path() / "sepremix_cli_test";
  fs::create_directories(p);
  return p;
}

json FirstRecord(const fs::path& report) {
  std::ifstream in(report);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    if (j.value("type", "") != "meta") return j;
  }
  FAIL("report has no data records: ", report.string());
  return {};
}

// Reduced architecture on full-length input, for fast CLI fixtures.
void WriteSmallCheckpoint(const fs::path& path, int channels, uint64_t seed) {
  nn::NetworkConfig config;
  config.input_channels = channels;
  config.front_filters = 8;
  config.front_kernel = 256;
  config.front_stride = 4096;
  config.block_count = 2;
  config.block_filters = 4;
  config.dense_units = 8;
  nn::Network<float> net(config);
  net.Init(seed);
  nn::SaveCheckpoint(net, nullptr, path.string());
}

}  // namespace

TEST_CASE("score2f command") {
  const fs::path root = Root();
  const auto speech = testing::SpeechLike(0.4, 192000, 1);
  const fs::path ref_wav = root / "ref.wav";
  SaveWav(AudioBuffer::Mono(speech, 48000), ref_wav.string());

  SUBCASE("identical probe scores the maximum") {
    const fs::path report = root / "score.jsonl";
    const auto run = RunCli("score2f " + ref_wav.string() + " " +
                            ref_wav.string() + " --report " + report.string());
    CHECK(run.exit_code == 0);
    CHECK(run.stdout_text.find("2f score") != std::string::npos);
    const json record = FirstRecord(report);
    CHECK(record["value"].get<double>() == doctest::Approx(100.0));
  }

  SUBCASE("boundary modes disagree on half-silent reference") {
    std::vector<float> half_ref(384000, 0.0f);
    std::vector<float> half_probe(384000, 0.0f);
    const auto noise = testing::WhiteNoise(0.25, 192000, 2);
    for (int64_t i = 0; i < 192000; ++i) {
      half_probe[i] = noise[i];
      half_ref[192000 + i] = speech[i];
      half_probe[192000 + i] = speech[i];
    }
    const fs::path r = root / "half_ref.wav";
    const fs::path p = root / "half_probe.wav";
    SaveWav(AudioBuffer::Mono(half_ref, 48000), r.string());
    SaveWav(AudioBuffer::Mono(half_probe, 48000), p.string());

    const fs::path report_on = root / "on.jsonl";
    const fs::path report_off = root / "off.jsonl";
    CHECK(RunCli("score2f " + r.string() + " " + p.string() +
                 " --boundary on --report " + report_on.string())
              .exit_code == 0);
    CHECK(RunCli("score2f " + r.string() + " " + p.string() +
                 " --boundary off --report " + report_off.string())
              .exit_code == 0);
    const double on_score = FirstRecord(report_on)["value"].get<double>();
    const double off_score = FirstRecord(report_off)["value"].get<double>();
    CHECK(off_score <= on_score);
  }

  SUBCASE("feature dump carries the contract fields") {
    const fs::path features = root / "features.jsonl";
    CHECK(RunCli("score2f " + ref_wav.string() + " " + ref_wav.string() +
                 " --features-out " + features.string())
              .exit_code == 0);
    const json row = FirstRecord(features);
    CHECK(row.contains("adb"));
    CHECK(row.contains("avg_mod_diff_1"));
    CHECK(row.contains("frames_used"));
    CHECK(row.contains("frames_total"));
    CHECK(row["mode"] == "disabled");
  }

  SUBCASE("missing file exits 2 with the path in the message") {
    const auto run = RunCli("score2f /no/such.wav " + ref_wav.string());
    CHECK(run.exit_code == 2);
    CHECK(run.stderr_text.find("/no/such.wav") != std::string::npos);
  }

  SUBCASE("garbage file exits 3") {
    const fs::path garbage = root / "garbage.wav";
    std::ofstream(garbage) << "not audio";
    const auto run = RunCli("score2f " + garbage.string() + " " + ref_wav.string());
    CHECK(run.exit_code == 3);
  }
}

TEST_CASE("predict command") {
  const fs::path root = Root();
  const fs::path ckpt = root / "small.ckpt";
  WriteSmallCheckpoint(ckpt, 2, 3);
  const fs::path probe = root / "probe.wav";
  const fs::path mix = root / "mix.wav";
  SaveWav(AudioBuffer::Mono(testing::SpeechLike(0.4, 192000, 4), 48000),
          probe.string());
  SaveWav(AudioBuffer::Mono(testing::SpeechLike(0.4, 192000, 5), 48000),
          mix.string());

  SUBCASE("reference-free usage error when a reference is supplied") {
    const auto run =
        RunCli("predict " + ckpt.string() + " " + probe.string() + " " +
               mix.string() + " -v r");
    CHECK(run.exit_code == 1);
  }
  SUBCASE("checkpoint/variant mismatch exits 4") {
    const auto run = RunCli("predict " + ckpt.string() + " " + probe.string() +
                            " -v r");
    CHECK(run.exit_code == 4);
  }
  SUBCASE("prediction is deterministic across invocations") {
    const fs::path report_a = root / "pred_a.jsonl";
    const fs::path report_b = root / "pred_b.jsonl";
    CHECK(RunCli("predict " + ckpt.string() + " " + probe.string() + " " +
                 mix.string() + " -v n --report " + report_a.string())
              .exit_code == 0);
    CHECK(RunCli("predict " + ckpt.string() + " " + probe.string() + " " +
                 mix.string() + " -v n --report " + report_b.string())
              .exit_code == 0);
    const json a = FirstRecord(report_a);
    const json b = FirstRecord(report_b);
    CHECK(a["q_hat"].get<double>() == b["q_hat"].get<double>());
    CHECK(a["variant"] == "nDNN2f");
    CHECK(a["checkpoint"].get<std::string>().size() == 8);
    const double q = a["q_hat"].get<double>();
    CHECK(q >= 0.0);
    CHECK(q <= 100.0);
  }
}

TEST_CASE("remix command") {
  const fs::path root = Root();
  const fs::path ckpt = root / "remix.ckpt";
  WriteSmallCheckpoint(ckpt, 2, 7);

  const auto speech = testing::SpeechLike(0.4, 192000, 8);
  const auto background = testing::WhiteNoise(0.15, 192000, 9);
  const fs::path mix_wav = root / "mixture.wav";
  const fs::path sep_wav = root / "separated.wav";
  SaveWav(AudioBuffer::Mono(testing::Add(speech, background), 48000),
          mix_wav.string());
  SaveWav(AudioBuffer::Mono(speech, 48000), sep_wav.string());

  SUBCASE("separated equal to mixture reproduces the mixture bit-exactly") {
    const fs::path out = root / "identity.wav";
    const auto run = RunCli("remix " + mix_wav.string() + " " + mix_wav.string() +
                            " --checkpoint " + ckpt.string() + " --out " +
                            out.string());
    CHECK(run.exit_code == 0);
    const AudioBuffer original = LoadWav(mix_wav.string());
    const AudioBuffer remixed = LoadWav(out.string());
    REQUIRE(remixed.length() == original.length());
    for (int64_t i = 0; i < original.length(); ++i)
      CHECK(remixed.channel(0)[i] == original.channel(0)[i]);
  }

  SUBCASE("gain stays inside the clamp and k shifts it") {
    const fs::path report0 = root / "remix_k0.jsonl";
    const fs::path report6 = root / "remix_k6.jsonl";
    CHECK(RunCli("remix " + mix_wav.string() + " " + sep_wav.string() +
                 " --checkpoint " + ckpt.string() + " --out " +
                 (root / "y0.wav").string() + " --report " + report0.string())
              .exit_code == 0);
    CHECK(RunCli("remix " + mix_wav.string() + " " + sep_wav.string() +
                 " --checkpoint " + ckpt.string() + " --k -6 --out " +
                 (root / "y6.wav").string() + " --report " + report6.string())
              .exit_code == 0);
    const json r0 = FirstRecord(report0);
    const json r6 = FirstRecord(report6);
    CHECK(r0["g_db"].get<double>() >= 4.0);
    CHECK(r0["g_db"].get<double>() <= 26.0);
    CHECK(r6["g_db"].get<double>() >= 4.0);
    const double g0 = r0["g_db"].get<double>();
    const double g6 = r6["g_db"].get<double>();
    if (g0 > 4.0 && g0 < 26.0 && g6 > 4.0 && g6 < 26.0)
      CHECK(g6 == doctest::Approx(g0 - 6.0));
    CHECK(r0["gamma"].get<double>() ==
          doctest::Approx(std::pow(10.0, -g0 / 20.0)));
  }

  SUBCASE("misaligned inputs exit 3") {
    const fs::path short_wav = root / "short.wav";
    SaveWav(AudioBuffer::Mono(testing::WhiteNoise(0.2, 96000, 10), 48000),
            short_wav.string());
    const auto run = RunCli("remix " + mix_wav.string() + " " +
                            short_wav.string() + " --checkpoint " +
                            ckpt.string() + " --out " +
                            (root / "bad.wav").string());
    CHECK(run.exit_code == 3);
  }
}

TEST_CASE("synth, train, eval pipeline") {
  const fs::path root = Root() / "pipeline";
  fs::remove_all(root);
  fs::create_directories(root / "speech");
  fs::create_directories(root / "background");
  SaveWav(AudioBuffer::Mono(testing::SpeechLike(0.4, 96000, 11), 48000),
          (root / "speech" / "s1.wav").string());
  SaveWav(AudioBuffer::Mono(testing::SpeechLike(0.4, 96000, 12), 48000),
          (root / "speech" / "s2.wav").string());
  SaveWav(AudioBuffer::Mono(testing::WhiteNoise(0.2, 96000, 13), 48000),
          (root / "background" / "b1.wav").string());
  {
    std::ofstream cfg(root / "corpus.cfg");
    cfg << "items = 2\ncrop_seconds = 1\n";
  }

  // synth: determinism and row count.
  const auto synth_a =
      RunCli("synth " + (root / "speech").string() + " " +
             (root / "background").string() + " " + (root / "out_a").string() +
             " --config " + (root / "corpus.cfg").string() + " --seed 5");
  REQUIRE(synth_a.exit_code == 0);
  CHECK(synth_a.stdout_text.find("rows: 30") != std::string::npos);
  const auto synth_b =
      RunCli("synth " + (root / "speech").string() + " " +
             (root / "background").string() + " " + (root / "out_b").string() +
             " --config " + (root / "corpus.cfg").string() + " --seed 5");
  REQUIRE(synth_b.exit_code == 0);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  };
  CHECK(slurp(root / "out_a" / "manifest.jsonl") ==
        slurp(root / "out_b" / "manifest.jsonl"));

  // Empty stems exit 5.
  fs::create_directories(root / "empty");
  CHECK(RunCli("synth " + (root / "empty").string() + " " +
               (root / "background").string() + " " + (root / "out_c").string())
            .exit_code == 5);

  // train on the manifest (as both train and valid) with a reduced net.
  {
    std::ofstream cfg(root / "net.cfg");
    cfg << "front_filters = 8\nfront_kernel = 256\nfront_stride = 4096\n"
        << "block_count = 2\nblock_filters = 4\ndense_units = 8\n";
  }
  const fs::path manifest = root / "out_a" / "manifest.jsonl";
  const fs::path ckpt = root / "model.ckpt";
  const fs::path log = root / "train.jsonl";
  const auto train = RunCli("train " + manifest.string() + " " +
                            manifest.string() + " " + ckpt.string() +
                            " --epochs 3 --batch 8 --seed 2 --log " +
                            log.string() + " --network-config " +
                            (root / "net.cfg").string());
  REQUIRE(train.exit_code == 0);
  // Log: meta line + one row per epoch.
  int rows = 0;
  {
    std::ifstream in(log);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (json::parse(line).value("type", "") != "meta") ++rows;
    }
  }
  CHECK(rows == 3);

  // The trained checkpoint is loadable by predict.
  const fs::path probe = root / "out_a" / "item_0000" / "probe_00.wav";
  const fs::path mixture = root / "out_a" / "item_0000" / "mixture.wav";
  const auto predict = RunCli("predict " + ckpt.string() + " " +
                              probe.string() + " " + mixture.string() + " -v n");
  CHECK(predict.exit_code == 0);

  // eval: manifest against itself is perfect; unknown id exits 6.
  const fs::path eval_report = root / "eval.jsonl";
  const auto eval = RunCli("eval " + manifest.string() + " " +
                           manifest.string() + " --report " + eval_report.string());
  REQUIRE(eval.exit_code == 0);
  const json row = FirstRecord(eval_report);
  CHECK(row["pearson"].get<double>() == doctest::Approx(1.0));

  const fs::path orphan = root / "orphan.jsonl";
  std::ofstream(orphan) << R"({"id":"nowhere","value":50.0})" << "\n";
  const auto bad_eval = RunCli("eval " + orphan.string() + " " + manifest.string());
  CHECK(bad_eval.exit_code == 6);
  CHECK(bad_eval.stderr_text.find("nowhere") != std::string::npos);

  fs::remove_all(root);
}
