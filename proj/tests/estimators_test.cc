// tests/estimators_test.cc

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

#include "core/common.h"
#include "core/estimators.h"
#include "test_signals.h"

using namespace sepremix;
using namespace sepremix::est;

namespace {

// Full-size network but with every weight zeroed and the output bias set to
// a constant: predicts that constant everywhere.
nn::Network<float> ConstantNetwork(int channels, float constant) {
  nn::NetworkConfig config;
  config.input_channels = channels;
  nn::Network<float> net(config);
  net.Init(1);
  for (auto& p : net.Params()) std::fill(p.value->begin(), p.value->end(), 0.0f);
  for (auto& p : net.Params())
    if (p.name == "dense_out.bias") (*p.value)[0] = constant;
  return net;
}

// Small trained-like network with nonzero weights for order-sensitivity
// checks (full front conv is too slow to run dozens of times here).
nn::Network<float> SmallNetwork(int channels, uint64_t seed) {
  nn::NetworkConfig config;
  config.input_channels = channels;
  config.input_length = 192000;
  config.front_filters = 8;
  config.front_kernel = 256;
  config.front_stride = 4096;  // -> 47
  config.block_count = 2;      // -> 24, 12
  config.block_filters = 4;
  config.dense_units = 8;
  nn::Network<float> net(config);
  net.Init(seed);
  return net;
}

}  // namespace

TEST_CASE("variant properties") {
  CHECK(VariantChannels(Variant::kIntrusive) == 2);
  CHECK(VariantChannels(Variant::kNonIntrusive) == 2);
  CHECK(VariantChannels(Variant::kReferenceFree) == 1);
  CHECK(VariantFromName("i") == Variant::kIntrusive);
  CHECK(VariantFromName("nDNN2f") == Variant::kNonIntrusive);
  CHECK(VariantFromName("reference_free") == Variant::kReferenceFree);
  CHECK_THROWS_AS(VariantFromName("x"), Error);
}

TEST_CASE("assemble_input stacks channels in probe/reference order") {
  const auto probe = testing::WhiteNoise(0.5, 192000, 1);
  const auto reference = testing::WhiteNoise(0.5, 192000, 2);

  const auto two = AssembleInput(Variant::kNonIntrusive, probe, &reference);
  CHECK(two.c == 2);
  CHECK(two.l == 192000);
  CHECK(two.data[0] == probe[0]);
  CHECK(two.data[192000] == reference[0]);

  const auto one = AssembleInput(Variant::kReferenceFree, probe, nullptr);
  CHECK(one.c == 1);
  CHECK(one.data[0] == probe[0]);

  CHECK_THROWS_AS(AssembleInput(Variant::kIntrusive, probe, nullptr), Error);
  CHECK_THROWS_AS(AssembleInput(Variant::kReferenceFree, probe, &reference),
                  Error);
  const std::vector<float> short_ref(100, 0.0f);
  CHECK_THROWS_AS(AssembleInput(Variant::kIntrusive, probe, &short_ref), Error);
}

TEST_CASE("constant checkpoint predicts its bias everywhere") {
  auto net = ConstantNetwork(2, 50.0f);
  const AudioBuffer probe =
      AudioBuffer::Mono(testing::WhiteNoise(0.4, 192000, 3), 48000);
  const AudioBuffer mixture =
      AudioBuffer::Mono(testing::WhiteNoise(0.4, 192000, 4), 48000);
  const auto score = PredictQuality(net, Variant::kNonIntrusive, probe, &mixture);
  CHECK(score.value == doctest::Approx(50.0));
  for (const auto& seg : score.per_segment)
    CHECK(seg.score == doctest::Approx(50.0));
}

TEST_CASE("chunking: 8 s mono item yields three segments") {
  auto net = ConstantNetwork(1, 42.0f);
  const AudioBuffer probe =
      AudioBuffer::Mono(testing::WhiteNoise(0.4, 384000, 5), 48000);
  const auto score = PredictQuality(net, Variant::kReferenceFree, probe, nullptr);
  CHECK(score.per_segment.size() == 3);
  CHECK(score.per_segment[1].offset == 96000);
  CHECK(score.value == doctest::Approx(42.0));
}

TEST_CASE("item estimate is the mean over segments and channels") {
  auto net = SmallNetwork(1, 9);
  const AudioBuffer probe =
      AudioBuffer::Mono(testing::SpeechLike(0.4, 384000, 6), 48000);
  const auto score = PredictQuality(net, Variant::kReferenceFree, probe, nullptr);
  double sum = 0.0;
  for (const auto& seg : score.per_segment) sum += seg.score;
  CHECK(score.value == doctest::Approx(sum / score.per_segment.size()));

  // Stereo: channel mean of per-channel means.
  AudioBuffer stereo({testing::SpeechLike(0.4, 192000, 7),
                      testing::WhiteNoise(0.3, 192000, 8)},
                     48000);
  const auto stereo_score =
      PredictQuality(net, Variant::kReferenceFree, stereo, nullptr);
  REQUIRE(stereo_score.per_channel.size() == 2);
  CHECK(stereo_score.value ==
        doctest::Approx((stereo_score.per_channel[0] +
                         stereo_score.per_channel[1]) / 2.0));
}

TEST_CASE("channel order is part of the contract") {
  auto net = SmallNetwork(2, 11);
  const AudioBuffer a =
      AudioBuffer::Mono(testing::SpeechLike(0.4, 192000, 12), 48000);
  const AudioBuffer b =
      AudioBuffer::Mono(testing::WhiteNoise(0.3, 192000, 13), 48000);
  const auto forward = PredictQuality(net, Variant::kNonIntrusive, a, &b);
  const auto swapped = PredictQuality(net, Variant::kNonIntrusive, b, &a);
  CHECK(forward.value != swapped.value);
}

TEST_CASE("config guard: channel mismatch rejected") {
  auto stereo_net = ConstantNetwork(2, 10.0f);
  const AudioBuffer probe =
      AudioBuffer::Mono(testing::WhiteNoise(0.4, 192000, 14), 48000);
  CHECK_THROWS_AS(
      PredictQuality(stereo_net, Variant::kReferenceFree, probe, nullptr),
      Error);
  try {
    PredictQuality(stereo_net, Variant::kReferenceFree, probe, nullptr);
  } catch (const Error& e) {
    CHECK(e.code() == StatusCode::kCheckpointMismatch);
  }

  auto mono_net = ConstantNetwork(1, 10.0f);
  const AudioBuffer mixture =
      AudioBuffer::Mono(testing::WhiteNoise(0.4, 192000, 15), 48000);
  CHECK_THROWS_AS(
      PredictQuality(mono_net, Variant::kNonIntrusive, probe, &mixture), Error);
}

TEST_CASE("misaligned reference rejected") {
  auto net = ConstantNetwork(2, 10.0f);
  const AudioBuffer probe =
      AudioBuffer::Mono(testing::WhiteNoise(0.4, 192000, 16), 48000);
  const AudioBuffer reference =
      AudioBuffer::Mono(testing::WhiteNoise(0.4, 96000, 17), 48000);
  CHECK_THROWS_AS(
      PredictQuality(net, Variant::kNonIntrusive, probe, &reference), Error);
}

TEST_CASE("prediction stays in range and deterministic") {
  auto net = SmallNetwork(2, 21);
  const AudioBuffer probe =
      AudioBuffer::Mono(testing::SpeechLike(0.5, 192000, 22), 48000);
  const AudioBuffer mixture =
      AudioBuffer::Mono(testing::SpeechLike(0.5, 192000, 23), 48000);
  const auto a = PredictQuality(net, Variant::kNonIntrusive, probe, &mixture);
  const auto b = PredictQuality(net, Variant::kNonIntrusive, probe, &mixture);
  CHECK(a.value == b.value);
  CHECK(a.value >= 0.0);
  CHECK(a.value <= 100.0);
}
