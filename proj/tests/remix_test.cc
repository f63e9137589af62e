// tests/remix_test.cc

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

#include <cmath>
#include <random>

#include "core/common.h"
#include "core/remix.h"
#include "test_signals.h"

using namespace sepremix;
using namespace sepremix::remix;

TEST_CASE("gain mapping presets and clamp") {
  SUBCASE("refined mapping at interior, floor, ceiling") {
    const GainMapping m = GainMapping::Refined();
    CHECK(MapGain(60.0, m).g_db == doctest::Approx(14.33).epsilon(1e-9));
    CHECK(MapGain(0.0, m).g_db == 4.0);    // raw -12.67 clamped up
    CHECK(MapGain(100.0, m).g_db == 26.0); // raw 32.33 clamped down
  }
  SUBCASE("initial mapping") {
    const GainMapping m = GainMapping::Initial();
    CHECK(MapGain(60.0, m).g_db == doctest::Approx(0.71 * 60 - 22.28).epsilon(1e-9));
  }
  SUBCASE("offset k shifts inside the clamp") {
    const GainMapping base = GainMapping::Refined(0.0);
    const GainMapping shifted = GainMapping::Refined(-6.0);
    CHECK(MapGain(60.0, shifted).g_db ==
          doctest::Approx(MapGain(60.0, base).g_db - 6.0).epsilon(1e-12));
  }
  SUBCASE("gamma is the linear factor of the clamped gain") {
    const RemixPlan plan = MapGain(60.0, GainMapping::Refined());
    CHECK(plan.gamma == doctest::Approx(std::pow(10.0, -14.33 / 20.0)).epsilon(1e-12));
    CHECK(plan.gamma > 0.0);
    CHECK(plan.gamma < 1.0);
  }
  SUBCASE("out-of-range quality rejected") {
    CHECK_THROWS_AS(MapGain(-1.0, GainMapping::Refined()), Error);
    CHECK_THROWS_AS(MapGain(100.5, GainMapping::Refined()), Error);
  }
  SUBCASE("preset lookup") {
    CHECK(GainMapping::Preset("initial").slope == doctest::Approx(0.71));
    CHECK(GainMapping::Preset("refined").intercept == doctest::Approx(-12.67));
    CHECK_THROWS_AS(GainMapping::Preset("bogus"), Error);
  }
}

TEST_CASE("mapping monotonicity and injectivity") {
  const GainMapping m = GainMapping::Refined();
  double previous = -1e9;
  for (double q = 0.0; q <= 100.0; q += 2.5) {
    const double g = MapGain(q, m).g_db;
    CHECK(g >= previous);
    previous = g;
  }
  // Unclamped region: strictly increasing, hence injective.
  GainMapping open = m;
  open.clamp = false;
  double prev_open = -1e9;
  for (double q = 0.0; q <= 100.0; q += 2.5) {
    const double g = MapGain(q, open).g_db;
    CHECK(g > prev_open);
    prev_open = g;
  }
}

TEST_CASE("apply_remix") {
  const auto speech = testing::SpeechLike(0.4, 48000, 1);
  const auto background = testing::WhiteNoise(0.2, 48000, 2);
  const AudioBuffer separated = AudioBuffer::Mono(speech, 48000);
  const AudioBuffer mixture =
      AudioBuffer::Mono(testing::Add(speech, background), 48000);

  SUBCASE("gamma one reproduces the mixture bit-exactly") {
    RemixPlan plan;
    plan.gamma = 1.0;
    const AudioBuffer y = ApplyRemix(mixture, separated, plan);
    for (int64_t i = 0; i < y.length(); ++i)
      CHECK(y.channel(0)[i] == mixture.channel(0)[i]);
  }
  SUBCASE("background-free input passes through for every gain") {
    for (double g : {4.0, 14.0, 26.0}) {
      RemixPlan plan;
      plan.g_db = g;
      plan.gamma = std::pow(10.0, -g / 20.0);
      const AudioBuffer y = ApplyRemix(separated, separated, plan);
      for (int64_t i = 0; i < 1000; ++i)
        CHECK(y.channel(0)[i] == separated.channel(0)[i]);
    }
  }
  SUBCASE("exact components give exactly -g dB of background attenuation") {
    for (double g : {6.0, 20.0}) {
      RemixPlan plan;
      plan.g_db = g;
      plan.gamma = std::pow(10.0, -g / 20.0);
      const AudioBuffer y = ApplyRemix(mixture, separated, plan);
      // Residual background in y.
      double pb = 0.0;
      for (int64_t i = 0; i < y.length(); ++i) {
        const double d = y.channel(0)[i] - speech[i];
        pb += d * d;
      }
      pb /= y.length();
      const double drop_db =
          10.0 * std::log10(testing::MeanPower(background) / pb);
      CHECK(drop_db == doctest::Approx(g).epsilon(0.0005));
    }
  }
  SUBCASE("misaligned inputs rejected") {
    const AudioBuffer shorter =
        AudioBuffer::Mono(std::vector<float>(1000, 0.0f), 48000);
    RemixPlan plan;
    CHECK_THROWS_AS(ApplyRemix(mixture, shorter, plan), Error);
  }
  SUBCASE("stereo remix runs per channel") {
    AudioBuffer stereo_mix({mixture.channel(0), mixture.channel(0)}, 48000);
    AudioBuffer stereo_sep({speech, speech}, 48000);
    RemixPlan plan;
    plan.gamma = 0.5;
    const AudioBuffer y = ApplyRemix(stereo_mix, stereo_sep, plan);
    CHECK(y.channel_count() == 2);
    for (int64_t i = 0; i < 100; ++i)
      CHECK(y.channel(0)[i] == y.channel(1)[i]);
  }
}

TEST_CASE("fit_mapping") {
  SUBCASE("exact line recovered") {
    std::vector<std::pair<double, double>> pairs;
    for (double q : {10.0, 30.0, 55.0, 80.0})
      pairs.emplace_back(q, 0.5 * q - 10.0);
    const GainMapping m = FitMapping(pairs);
    CHECK(m.slope == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(m.intercept == doctest::Approx(-10.0).epsilon(1e-9));
  }
  SUBCASE("degenerate inputs rejected") {
    CHECK_THROWS_AS(FitMapping({{50.0, 10.0}}), Error);
    CHECK_THROWS_AS(FitMapping({{50.0, 10.0}, {50.0, 12.0}}), Error);
  }
  SUBCASE("noisy fit matches the normal-equation oracle") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> q_dist(0.0, 100.0);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<std::pair<double, double>> pairs;
    for (int i = 0; i < 200; ++i) {
      const double q = q_dist(rng);
      pairs.emplace_back(q, 0.45 * q - 12.67 + noise(rng));
    }
    // Closed-form least squares.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = pairs.size();
    for (auto& [x, y] : pairs) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    const GainMapping m = FitMapping(pairs);
    CHECK(m.slope == doctest::Approx(slope).epsilon(1e-9));
    CHECK(m.intercept == doctest::Approx(intercept).epsilon(1e-9));
  }
}
