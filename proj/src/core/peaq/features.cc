// src/core/peaq/features.cc

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

#include "core/peaq/features.h"

#include <algorithm>
#include <cmath>

#include "core/common.h"

namespace sepremix::peaq {

namespace {

// Modulation averaging skips the settling time of the smoothing filters.
constexpr int64_t kModDiffSettleFrames = 24;
constexpr double kModDiffLevelWeight = 100.0;

// Per-frame modulation difference (offset 1, equal weights) and its level
// weight derived from the reference loudness.
void ModulationDifference(const FftEarModel& model, const FrameAnalysis& ref,
                          const FrameAnalysis& test, double* diff,
                          double* weight) {
  const int bands = model.band_count();
  double d = 0.0;
  double w = 0.0;
  for (int i = 0; i < bands; ++i) {
    d += std::abs(test.modulation[i] - ref.modulation[i]) /
         (1.0 + ref.modulation[i]);
    const double loud = ref.loudness_avg[i];
    w += loud / (loud + kModDiffLevelWeight *
                            std::pow(model.internal_noise(i), 0.3));
  }
  *diff = d * 100.0 / bands;
  *weight = w;
}

// Probability that the level difference between reference and probe
// excitation is audible, and the corresponding number of just-noticeable
// steps, accumulated across bands.
void DetectionProbability(const FftEarModel& model, const FrameAnalysis& ref,
                          const FrameAnalysis& test, double* probability,
                          double* steps) {
  const int bands = model.band_count();
  double not_detected = 1.0;
  double total_steps = 0.0;
  for (int i = 0; i < bands; ++i) {
    const double eref_db = 10.0 * std::log10(ref.excitation[i]);
    const double etest_db = 10.0 * std::log10(test.excitation[i]);
    const double level = 0.3 * std::max(eref_db, etest_db) + 0.7 * etest_db;
    double s = 1e30;
    if (level > 0.0) {
      s = 5.95072 * std::pow(6.39468 / level, 1.71332) +
          9.01033e-11 * std::pow(level, 4.0) +
          5.05622e-6 * std::pow(level, 3.0) - 0.00102438 * level * level +
          0.0550197 * level - 0.198719;
    }
    const double e = eref_db - etest_db;
    const double b = eref_db > etest_db ? 4.0 : 6.0;
    const double pc = 1.0 - std::pow(0.5, std::pow(e / s, b));
    const double qc = std::abs(std::trunc(e)) / s;
    not_detected *= 1.0 - pc;
    total_steps += qc;
  }
  *probability = 1.0 - not_detected;
  *steps = total_steps;
}

}  // namespace

std::string BoundaryModeName(BoundaryMode mode) {
  return mode == BoundaryMode::kEnabled ? "enabled" : "disabled";
}

BoundaryMode BoundaryModeFromName(const std::string& name) {
  if (name == "enabled" || name == "on") return BoundaryMode::kEnabled;
  if (name == "disabled" || name == "off") return BoundaryMode::kDisabled;
  Throw(StatusCode::kInvalidArgument, "unknown boundary mode: " + name);
}

ActiveInterval FindDataBoundaries(const std::vector<float>& samples,
                                  const EarModelConfig& config) {
  const double threshold = config.boundary_threshold_16bit / 32768.0;
  const int run = config.boundary_run_samples;
  const int64_t n = static_cast<int64_t>(samples.size());
  ActiveInterval interval;
  if (n < run) return interval;

  double sum = 0.0;
  for (int i = 0; i < run; ++i) sum += std::abs(samples[i]);
  int64_t first = -1;
  for (int64_t i = 0;; ++i) {
    if (sum > threshold) {
      first = i;
      break;
    }
    if (i + run >= n) break;
    sum += std::abs(samples[i + run]) - std::abs(samples[i]);
  }
  if (first < 0) return interval;

  sum = 0.0;
  for (int64_t i = n - run; i < n; ++i) sum += std::abs(samples[i]);
  int64_t last = -1;
  for (int64_t i = n - run;; --i) {
    if (sum > threshold) {
      last = i;
      break;
    }
    if (i == 0) break;
    sum += std::abs(samples[i - 1]) - std::abs(samples[i + run - 1]);
  }

  interval.begin = first;
  interval.end = last + run;
  return interval;
}

FeaturePair ComputeFeatures(const AudioBuffer& reference,
                            const AudioBuffer& probe, BoundaryMode mode,
                            const EarModelConfig& config) {
  const FftEarModel model(config);
  return ComputeFeatures(model, reference, probe, mode);
}

FeaturePair ComputeFeatures(const FftEarModel& model,
                            const AudioBuffer& reference,
                            const AudioBuffer& probe, BoundaryMode mode) {
  Require(reference.IsMono() && probe.IsMono(), StatusCode::kFormatError,
          "feature extraction expects mono signals");
  Require(reference.length() > 0, StatusCode::kFormatError,
          "zero-length input");
  Require(reference.length() == probe.length(), StatusCode::kFormatError,
          "reference/probe length mismatch");
  Require(reference.sample_rate() == kEarSampleRate &&
              probe.sample_rate() == kEarSampleRate,
          StatusCode::kFormatError, "expected 48 kHz input");

  const auto& ref = reference.channel(0);
  const auto& tst = probe.channel(0);
  const int64_t frames = FftEarModel::FrameCount(reference.length());

  ActiveInterval active{0, reference.length()};
  if (mode == BoundaryMode::kEnabled)
    active = FindDataBoundaries(ref, model.config());

  auto ref_state = model.NewState();
  auto test_state = model.NewState();
  FrameAnalysis ref_frame, test_frame;

  FeaturePair out;
  out.frames_total = frames;

  double mod_num = 0.0;
  double mod_den = 0.0;
  double steps_sum = 0.0;
  int64_t distorted_frames = 0;

  for (int64_t f = 0; f < frames; ++f) {
    const int64_t start = f * kFrameHop;
    model.ProcessFrame(ref.data() + start, &ref_state, &ref_frame);
    model.ProcessFrame(tst.data() + start, &test_state, &test_frame);

    const bool used =
        start < active.end && start + kFrameLength > active.begin;
    if (!used) continue;
    ++out.frames_used;

    if (f >= kModDiffSettleFrames) {
      double diff = 0.0, weight = 0.0;
      ModulationDifference(model, ref_frame, test_frame, &diff, &weight);
      mod_num += weight * diff;
      mod_den += weight;
    }

    double prob = 0.0, steps = 0.0;
    DetectionProbability(model, ref_frame, test_frame, &prob, &steps);
    if (prob > 0.5) {
      ++distorted_frames;
      steps_sum += steps;
    }
  }

  out.avg_mod_diff_1 = mod_den > 0.0 ? mod_num / mod_den : 0.0;
  if (distorted_frames > 0) {
    // The standard's value can dip below zero in degenerate regimes; the
    // feature contract keeps it non-negative.
    out.adb = steps_sum > 0.0
                  ? std::max(0.0, std::log10(steps_sum / distorted_frames))
                  : 0.0;
  }
  return out;
}

}  // namespace sepremix::peaq
