// tests/peaq_test.cc

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

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "core/common.h"
#include "core/peaq/ear_model.h"
#include "core/peaq/features.h"
#include "test_signals.h"

using namespace sepremix;
using namespace sepremix::peaq;

namespace {

std::vector<FrameAnalysis> AnalyzeAll(const FftEarModel& model,
                                      const std::vector<float>& samples) {
  auto state = model.NewState();
  const int64_t frames = FftEarModel::FrameCount(samples.size());
  std::vector<FrameAnalysis> out(frames);
  for (int64_t f = 0; f < frames; ++f)
    model.ProcessFrame(samples.data() + f * kFrameHop, &state, &out[f]);
  return out;
}

AudioBuffer Mono(std::vector<float> samples) {
  return AudioBuffer::Mono(std::move(samples), 48000);
}

// probe = reference + white noise at the requested SNR.
std::vector<float> AddNoiseAtSnr(const std::vector<float>& reference,
                                 double snr_db, uint64_t seed) {
  auto noise = testing::WhiteNoise(1.0, reference.size(), seed);
  const double gain = testing::Rms(reference) /
                      (testing::Rms(noise) * std::pow(10.0, snr_db / 20.0));
  return testing::Add(reference, noise, gain);
}

}  // namespace

TEST_CASE("frame count formula") {
  CHECK(FftEarModel::FrameCount(2048) == 1);
  CHECK(FftEarModel::FrameCount(2047) == 0);
  CHECK(FftEarModel::FrameCount(2048 + 1024) == 2);
  CHECK(FftEarModel::FrameCount(192000) == 186);
}

TEST_CASE("transform places energy where it belongs") {
  const FftEarModel model{EarModelConfig()};
  SUBCASE("dc input peaks in bin 0") {
    std::vector<float> dc(2048, 0.5f);
    const auto frames = AnalyzeAll(model, dc);
    const auto& p = frames[0].power_spectrum;
    const auto peak = std::max_element(p.begin(), p.end());
    CHECK(peak == p.begin());
    // Energy beyond the window mainlobe is negligible.
    double total = 0.0, tail = 0.0;
    for (size_t k = 0; k < p.size(); ++k) {
      total += p[k];
      if (k >= 3) tail += p[k];
    }
    CHECK(tail / total < 1e-8);
  }
  SUBCASE("1 kHz sine peaks at bin 43") {
    const auto sine = testing::Sine(1000.0, 0.8, 2048);
    const auto frames = AnalyzeAll(model, sine);
    const auto& p = frames[0].power_spectrum;
    const auto peak = std::max_element(p.begin(), p.end());
    CHECK(std::distance(p.begin(), peak) == 43);
  }
  SUBCASE("full-scale bin-centered sine peaks at the playback level") {
    // Bin 44 center: 44 * 48000 / 2048 = 1031.25 Hz.
    const auto sine = testing::Sine(1031.25, 1.0, 2048);
    const auto frames = AnalyzeAll(model, sine);
    const auto& p = frames[0].power_spectrum;
    const double peak_db = 10.0 * std::log10(p[44]);
    CHECK(peak_db == doctest::Approx(92.0).epsilon(0.002));
  }
}

TEST_CASE("excitation patterns") {
  const FftEarModel model{EarModelConfig()};
  SUBCASE("silence settles at the internal noise floor") {
    std::vector<float> silence(2048 + 40 * 1024, 0.0f);
    const auto frames = AnalyzeAll(model, silence);
    const auto& last = frames.back();
    for (int i = 0; i < model.band_count(); ++i) {
      const double ratio = last.excitation[i] / model.internal_noise(i);
      // Spreading redistributes the noise floor slightly; it must stay
      // within a couple of dB of the per-band floor.
      CHECK(ratio > std::pow(10.0, -3.0 / 10.0));
      CHECK(ratio < std::pow(10.0, 3.0 / 10.0));
    }
  }
  SUBCASE("+6 dB raises excitation in every band") {
    const auto base = testing::SpeechLike(0.2, 2048 + 20 * 1024, 42);
    std::vector<float> loud(base.size());
    for (size_t i = 0; i < base.size(); ++i) loud[i] = 2.0f * base[i];
    const auto quiet_frames = AnalyzeAll(model, base);
    const auto loud_frames = AnalyzeAll(model, loud);
    const auto& q = quiet_frames.back().excitation;
    const auto& l = loud_frames.back().excitation;
    for (int i = 0; i < model.band_count(); ++i) CHECK(l[i] >= q[i]);
    CHECK(*std::max_element(l.begin(), l.end()) >
          *std::max_element(q.begin(), q.end()));
  }
  SUBCASE("narrowband tone maximizes its own band") {
    const double tone_hz = 1000.0;
    const auto sine = testing::Sine(tone_hz, 0.5, 2048 + 20 * 1024);
    const auto frames = AnalyzeAll(model, sine);
    const auto& e = frames.back().excitation;
    const int argmax = static_cast<int>(
        std::max_element(e.begin(), e.end()) - e.begin());
    // Band containing the tone, from the model's own tables.
    int tone_band = -1;
    for (int i = 0; i < model.band_count(); ++i) {
      if (model.band_center_hz(i) >= tone_hz) {
        tone_band = (std::abs(model.band_center_hz(i) - tone_hz) <
                     std::abs(model.band_center_hz(i - 1) - tone_hz))
                        ? i
                        : i - 1;
        break;
      }
    }
    CHECK(std::abs(argmax - tone_band) <= 1);
  }
}

TEST_CASE("modulation patterns") {
  const FftEarModel model{EarModelConfig()};
  const int64_t length = 2048 + 120 * 1024;
  auto am_tone = [&](double depth) {
    std::vector<float> x(length);
    for (int64_t n = 0; n < length; ++n) {
      const double t = static_cast<double>(n) / 48000.0;
      const double envelope = 1.0 + depth * std::sin(2.0 * 3.14159265358979 * 4.0 * t);
      x[n] = static_cast<float>(0.3 * envelope * std::sin(2.0 * 3.14159265358979 * 1000.0 * t));
    }
    return x;
  };
  auto settled_modulation = [&](const std::vector<float>& x) {
    const auto frames = AnalyzeAll(model, x);
    double peak = 0.0;
    for (int i = 0; i < model.band_count(); ++i)
      peak = std::max(peak, frames.back().modulation[i]);
    return peak;
  };

  SUBCASE("stationary tone settles to near-zero modulation") {
    const auto steady = testing::Sine(1000.0, 0.3, length);
    const auto frames = AnalyzeAll(model, steady);
    double early = 0.0, late = 0.0;
    for (int i = 0; i < model.band_count(); ++i) {
      early = std::max(early, frames[4].modulation[i]);
      late = std::max(late, frames.back().modulation[i]);
    }
    CHECK(late < 0.05);
    CHECK(late < early);
  }
  SUBCASE("amplitude modulation registers and grows with depth") {
    const double shallow = settled_modulation(am_tone(0.25));
    const double deep = settled_modulation(am_tone(0.5));
    CHECK(shallow > 0.01);
    CHECK(deep > shallow);
  }
}

TEST_CASE("data boundaries") {
  EarModelConfig config;
  SUBCASE("single burst") {
    std::vector<float> x(5000, 0.0f);
    x[1000] = 0.5f;
    const auto interval = FindDataBoundaries(x, config);
    CHECK(interval.begin == 996);
    CHECK(interval.end == 1005);
  }
  SUBCASE("all silent") {
    std::vector<float> x(5000, 0.0f);
    const auto interval = FindDataBoundaries(x, config);
    CHECK(interval.begin == interval.end);
  }
  SUBCASE("threshold honors the 16-bit domain") {
    // Five consecutive samples summing just below / above 200/32768.
    std::vector<float> low(5000, 0.0f), high(5000, 0.0f);
    for (int i = 0; i < 5; ++i) {
      low[100 + i] = 39.0f / 32768.0f;   // sum 195
      high[100 + i] = 41.0f / 32768.0f;  // sum 205
    }
    CHECK(FindDataBoundaries(low, config).begin ==
          FindDataBoundaries(low, config).end);
    CHECK(FindDataBoundaries(high, config).begin == 100);
  }
}

TEST_CASE("compute_features basics") {
  SUBCASE("identical signals show no distortion") {
    const auto x = testing::SpeechLike(0.4, 192000, 3);
    const auto f = ComputeFeatures(Mono(x), Mono(x), BoundaryMode::kDisabled);
    CHECK(f.adb == 0.0);
    CHECK(f.avg_mod_diff_1 <= 1e-6);
    CHECK(f.frames_used == f.frames_total);
    CHECK(f.frames_total == 186);
  }
  SUBCASE("silent reference with noisy probe vanishes in legacy mode") {
    std::vector<float> silence(192000, 0.0f);
    const auto noise = testing::WhiteNoise(0.3, 192000, 17);
    const auto f =
        ComputeFeatures(Mono(silence), Mono(noise), BoundaryMode::kEnabled);
    CHECK(f.adb == 0.0);
    CHECK(f.avg_mod_diff_1 == 0.0);
    CHECK(f.frames_used == 0);
    CHECK(f.frames_total > 0);
  }
  SUBCASE("adapted mode keeps every frame and sees the distortion") {
    std::vector<float> silence(192000, 0.0f);
    const auto noise = testing::WhiteNoise(0.3, 192000, 17);
    const auto f =
        ComputeFeatures(Mono(silence), Mono(noise), BoundaryMode::kDisabled);
    CHECK(f.frames_used == f.frames_total);
    CHECK(f.avg_mod_diff_1 > 0.0);
  }
  SUBCASE("error paths") {
    const auto x = testing::WhiteNoise(0.1, 4096, 1);
    const auto y = testing::WhiteNoise(0.1, 8192, 2);
    CHECK_THROWS_AS(
        ComputeFeatures(Mono(x), Mono(y), BoundaryMode::kDisabled), Error);
    CHECK_THROWS_AS(ComputeFeatures(Mono({}), Mono({}), BoundaryMode::kDisabled),
                    Error);
  }
}

TEST_CASE("boundary sensitivity on half-silent reference") {
  // First half: silent reference under a noisy probe. Second half: active
  // speech-like reference reproduced in the probe.
  const int64_t half = 192000;
  std::vector<float> reference(2 * half, 0.0f);
  std::vector<float> probe(2 * half, 0.0f);
  const auto speech = testing::SpeechLike(0.4, half, 5);
  const auto noise = testing::WhiteNoise(0.25, half, 6);
  for (int64_t i = 0; i < half; ++i) {
    probe[i] = noise[i];
    reference[half + i] = speech[i];
    probe[half + i] = speech[i];
  }
  const auto enabled =
      ComputeFeatures(Mono(reference), Mono(probe), BoundaryMode::kEnabled);
  const auto disabled =
      ComputeFeatures(Mono(reference), Mono(probe), BoundaryMode::kDisabled);

  CHECK(disabled.frames_used == disabled.frames_total);
  CHECK(enabled.frames_used < enabled.frames_total);
  CHECK(disabled.avg_mod_diff_1 > enabled.avg_mod_diff_1);
  CHECK(disabled.adb >= enabled.adb);
}

TEST_CASE("noise ladder raises the modulation difference") {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const auto reference = testing::SpeechLike(0.4, 192000, seed);
    double previous = -1.0;
    for (double snr : {40.0, 20.0, 10.0, 0.0}) {
      const auto probe = AddNoiseAtSnr(reference, snr, seed * 100 + 7);
      const auto f =
          ComputeFeatures(Mono(reference), Mono(probe), BoundaryMode::kDisabled);
      CHECK(f.avg_mod_diff_1 >= previous);
      previous = f.avg_mod_diff_1;
    }
  }
}

TEST_CASE("feature extraction is deterministic") {
  const auto reference = testing::SpeechLike(0.4, 192000, 11);
  const auto probe = AddNoiseAtSnr(reference, 20.0, 23);
  const auto a =
      ComputeFeatures(Mono(reference), Mono(probe), BoundaryMode::kDisabled);
  const auto b =
      ComputeFeatures(Mono(reference), Mono(probe), BoundaryMode::kDisabled);
  CHECK(a.adb == b.adb);
  CHECK(a.avg_mod_diff_1 == b.avg_mod_diff_1);
}
