// tests/eval_test.cc

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
#include <filesystem>
#include <fstream>
#include <random>

#include "core/common.h"
#include "core/evalharness.h"

using namespace sepremix;
using namespace sepremix::eval;

TEST_CASE("pearson") {
  const std::vector<double> x = {1, 2, 3, 4};
  SUBCASE("perfect correlation") {
    CHECK(Pearson(x, x) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<double> neg;
    for (double v : x) neg.push_back(-v);
    CHECK(Pearson(x, neg) == doctest::Approx(-1.0).epsilon(1e-12));
  }
  SUBCASE("matches the direct formula") {
    const std::vector<double> y = {1, 2, 3, 5};
    // Direct product-moment evaluation.
    const double mx = 2.5, my = 2.75;
    double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < 4; ++i) {
      sxy += (x[i] - mx) * (y[i] - my);
      sxx += (x[i] - mx) * (x[i] - mx);
      syy += (y[i] - my) * (y[i] - my);
    }
    CHECK(Pearson(x, y) ==
          doctest::Approx(sxy / std::sqrt(sxx * syy)).epsilon(1e-12));
  }
  SUBCASE("zero variance raises") {
    CHECK_THROWS_AS(Pearson({1, 1, 1}, {1, 2, 3}), Error);
  }
  SUBCASE("invariant under positive affine transforms") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(0.0, 100.0);
    std::vector<double> a(50), b(50);
    for (size_t i = 0; i < 50; ++i) {
      a[i] = dist(rng);
      b[i] = 0.6 * a[i] + dist(rng) * 0.2;
    }
    std::vector<double> a2, b2;
    for (double v : a) a2.push_back(3.0 * v + 7.0);
    for (double v : b) b2.push_back(0.5 * v - 2.0);
    CHECK(Pearson(a, b) == doctest::Approx(Pearson(a2, b2)).epsilon(1e-12));
  }
}

TEST_CASE("regression slope") {
  const std::vector<double> x = {0, 1, 2, 3, 4};
  SUBCASE("identity and affine") {
    CHECK(RegressionSlope(x, x) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<double> y;
    for (double v : x) y.push_back(2.0 * v + 3.0);
    CHECK(RegressionSlope(x, y) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("random pairs match the normal equations") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    std::vector<double> a(64), b(64);
    for (size_t i = 0; i < 64; ++i) {
      a[i] = dist(rng);
      b[i] = dist(rng);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < 64; ++i) {
      sx += a[i];
      sy += b[i];
      sxx += a[i] * a[i];
      sxy += a[i] * b[i];
    }
    const double n = 64.0;
    const double oracle = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(RegressionSlope(a, b) == doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("mae and rmse") {
  SUBCASE("identical vectors") {
    const std::vector<double> x = {5, 6, 7};
    CHECK(MeanAbsoluteError(x, x) == 0.0);
    CHECK(RootMeanSquaredError(x, x) == 0.0);
  }
  SUBCASE("constant offset") {
    const std::vector<double> x = {1, 2, 3};
    const std::vector<double> y = {3, 4, 5};
    CHECK(MeanAbsoluteError(x, y) == doctest::Approx(2.0));
    CHECK(RootMeanSquaredError(x, y) == doctest::Approx(2.0));
  }
  SUBCASE("hand arithmetic: diffs 1 and 3") {
    const std::vector<double> x = {0, 0};
    const std::vector<double> y = {1, 3};
    CHECK(MeanAbsoluteError(x, y) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(RootMeanSquaredError(x, y) ==
          doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  }
  SUBCASE("rmse dominates mae on random pairs") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(0.0, 100.0);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<double> a(8), b(8);
      for (size_t i = 0; i < 8; ++i) {
        a[i] = dist(rng);
        b[i] = dist(rng);
      }
      CHECK(RootMeanSquaredError(a, b) >= MeanAbsoluteError(a, b) - 1e-12);
    }
  }
}

TEST_CASE("fisher aggregation") {
  CHECK(FisherAggregate({0.5, 0.5}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(FisherAggregate({0.0}) == doctest::Approx(0.0));
  const double expected =
      std::tanh((std::atanh(0.8) + std::atanh(0.9)) / 2.0);
  CHECK(FisherAggregate({0.8, 0.9}) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(FisherAggregate({0.8, 0.9}) == doctest::Approx(0.8581).epsilon(1e-4));
  CHECK_THROWS_AS(FisherAggregate({1.0, 0.5}), Error);
}

TEST_CASE("evaluate_run") {
  auto record = [](const std::string& id, const std::string& variant,
                   const std::string& split, double value) {
    PredictionRecord r;
    r.id = id;
    r.variant = variant;
    r.split = split;
    r.value = value;
    return r;
  };

  SUBCASE("perfect predictions") {
    std::vector<PredictionRecord> refs, preds;
    for (int i = 0; i < 5; ++i) {
      refs.push_back(record("item" + std::to_string(i), "", "test", 10.0 * i));
      preds.push_back(
          record("item" + std::to_string(i), "nDNN2f", "test", 10.0 * i));
    }
    const EvalReport report = EvaluateRun(preds, refs);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].pearson == doctest::Approx(1.0));
    CHECK(report.rows[0].slope == doctest::Approx(1.0));
    CHECK(report.rows[0].mae == doctest::Approx(0.0));
    CHECK(report.rows[0].rmse == doctest::Approx(0.0));
    CHECK(report.rows[0].pairs == 5);
    CHECK(report.aggregated.empty());
  }
  SUBCASE("missing id is a join failure naming the id") {
    std::vector<PredictionRecord> refs = {record("known", "", "", 1.0),
                                          record("known2", "", "", 2.0)};
    std::vector<PredictionRecord> preds = {record("known", "n", "", 1.0),
                                           record("missing", "n", "", 2.0)};
    CHECK_THROWS_WITH_AS(EvaluateRun(preds, refs),
                         doctest::Contains("missing"), Error);
    try {
      EvaluateRun(preds, refs);
    } catch (const Error& e) {
      CHECK(e.code() == StatusCode::kJoinFailure);
    }
  }
  SUBCASE("two splits add a fisher aggregate row") {
    std::vector<PredictionRecord> refs, preds;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(0.0, 100.0);
    for (const std::string split : {"a", "b"}) {
      for (int i = 0; i < 10; ++i) {
        const double v = dist(rng);
        refs.push_back(record(split + std::to_string(i), "", split, v));
        preds.push_back(record(split + std::to_string(i), "nDNN2f", split,
                               v + dist(rng) * 0.1));
      }
    }
    const EvalReport report = EvaluateRun(preds, refs);
    CHECK(report.rows.size() == 2);
    REQUIRE(report.aggregated.size() == 1);
    CHECK(report.aggregated[0].first == "nDNN2f");
    const double expected = FisherAggregate(
        {report.rows[0].pearson, report.rows[1].pearson});
    CHECK(report.aggregated[0].second == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("records files round trip") {
  namespace fs = std::filesystem;
  const std::string path =
      (fs::temp_directory_path() / "sepremix_records_test.jsonl").string();
  {
    std::ofstream out(path);
    out << R"({"type":"meta","seed":"1"})" << "\n";
    out << R"({"id":"a","value":12.5,"variant":"nDNN2f","split":"test"})" << "\n";
    out << R"({"id":"b","label":50.0})" << "\n";
    out << R"({"id":"c","q_hat":70.0})" << "\n";
  }
  const auto records = ReadRecords(path);
  REQUIRE(records.size() == 3);
  CHECK(records[0].value == 12.5);
  CHECK(records[0].variant == "nDNN2f");
  CHECK(records[1].value == 50.0);
  CHECK(records[2].value == 70.0);
  fs::remove(path);

  CHECK_THROWS_AS(ReadRecords("/nonexistent/records.jsonl"), Error);
}
