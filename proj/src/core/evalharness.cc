// src/core/evalharness.cc

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

#include "core/evalharness.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "core/common.h"

namespace sepremix::eval {

namespace {

void CheckPaired(const std::vector<double>& x, const std::vector<double>& y) {
  Require(x.size() == y.size(), StatusCode::kInvalidArgument,
          "paired sequences have different lengths");
  Require(x.size() >= 2, StatusCode::kInvalidArgument,
          "need at least two pairs");
  for (size_t i = 0; i < x.size(); ++i)
    Require(std::isfinite(x[i]) && std::isfinite(y[i]),
            StatusCode::kInvalidArgument, "non-finite score value");
}

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

double Pearson(const std::vector<double>& x, const std::vector<double>& y) {
  CheckPaired(x, y);
  const double mx = Mean(x), my = Mean(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  Require(sxx > 0.0 && syy > 0.0, StatusCode::kInvalidArgument,
          "zero variance in correlation input");
  return sxy / std::sqrt(sxx * syy);
}

double RegressionSlope(const std::vector<double>& reference,
                       const std::vector<double>& predicted) {
  CheckPaired(reference, predicted);
  const double mx = Mean(reference), my = Mean(predicted);
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < reference.size(); ++i) {
    const double dx = reference[i] - mx;
    sxx += dx * dx;
    sxy += dx * (predicted[i] - my);
  }
  Require(sxx > 0.0, StatusCode::kInvalidArgument,
          "zero variance in regression input");
  return sxy / sxx;
}

double MeanAbsoluteError(const std::vector<double>& x,
                         const std::vector<double>& y) {
  CheckPaired(x, y);
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - y[i]);
  return s / static_cast<double>(x.size());
}

double RootMeanSquaredError(const std::vector<double>& x,
                            const std::vector<double>& y) {
  CheckPaired(x, y);
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s / static_cast<double>(x.size()));
}

double FisherAggregate(const std::vector<double>& correlations) {
  Require(!correlations.empty(), StatusCode::kInvalidArgument,
          "no correlations to aggregate");
  double s = 0.0;
  for (double r : correlations) {
    Require(std::abs(r) < 1.0, StatusCode::kInvalidArgument,
            "Fisher aggregation requires |rho| < 1");
    s += std::atanh(r);
  }
  return std::tanh(s / static_cast<double>(correlations.size()));
}

EvalReport EvaluateRun(const std::vector<PredictionRecord>& predictions,
                       const std::vector<PredictionRecord>& references) {
  // references keyed by (split, id); the reference variant field is ignored.
  std::map<std::pair<std::string, std::string>, double> ref_by_key;
  for (const auto& r : references) ref_by_key[{r.split, r.id}] = r.value;

  std::map<std::pair<std::string, std::string>, ScorePairSet> cells;
  for (const auto& p : predictions) {
    auto it = ref_by_key.find({p.split, p.id});
    Require(it != ref_by_key.end(), StatusCode::kJoinFailure,
            "no reference score for item '" + p.id + "' (split '" + p.split +
                "')");
    auto& cell = cells[{p.variant, p.split}];
    cell.ids.push_back(p.id);
    cell.predicted.push_back(p.value);
    cell.reference.push_back(it->second);
  }
  Require(!cells.empty(), StatusCode::kEmptyDataset, "no predictions to evaluate");

  EvalReport report;
  std::map<std::string, std::vector<double>> rhos_by_variant;
  for (auto& [key, cell] : cells) {
    EvalRow row;
    row.variant = key.first;
    row.split = key.second;
    row.pairs = static_cast<int64_t>(cell.ids.size());
    row.pearson = Pearson(cell.reference, cell.predicted);
    row.slope = RegressionSlope(cell.reference, cell.predicted);
    row.mae = MeanAbsoluteError(cell.reference, cell.predicted);
    row.rmse = RootMeanSquaredError(cell.reference, cell.predicted);
    rhos_by_variant[row.variant].push_back(row.pearson);
    report.rows.push_back(row);
  }
  for (auto& [variant, rhos] : rhos_by_variant) {
    if (rhos.size() < 2) continue;
    // Perfect correlations sit outside atanh's domain; treat them as the
    // limit by nudging them inside.
    std::vector<double> clipped;
    bool all_equal = true;
    for (double r : rhos) {
      if (r != rhos.front()) all_equal = false;
      clipped.push_back(std::clamp(r, -(1.0 - 1e-12), 1.0 - 1e-12));
    }
    report.aggregated.emplace_back(
        variant, all_equal ? rhos.front() : FisherAggregate(clipped));
  }
  return report;
}

std::vector<PredictionRecord> ReadRecords(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), StatusCode::kIoError, "cannot open records file: " + path);
  std::vector<PredictionRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      Throw(StatusCode::kFormatError,
            path + " line " + std::to_string(lineno) + ": " + e.what());
    }
    if (j.value("type", "") == "meta") continue;
    PredictionRecord r;
    Require(j.contains("id"), StatusCode::kFormatError,
            path + " line " + std::to_string(lineno) + ": missing 'id'");
    r.id = j.at("id").get<std::string>();
    if (j.contains("value")) {
      r.value = j.at("value").get<double>();
    } else if (j.contains("label")) {
      r.value = j.at("label").get<double>();
    } else if (j.contains("q_hat")) {
      r.value = j.at("q_hat").get<double>();
    } else {
      Throw(StatusCode::kFormatError,
            path + " line " + std::to_string(lineno) +
                ": no 'value', 'label', or 'q_hat' field");
    }
    r.variant = j.value("variant", "");
    r.split = j.value("split", "");
    out.push_back(std::move(r));
  }
  return out;
}

std::string FormatReportTable(const EvalReport& report) {
  std::ostringstream out;
  char line[256];
  snprintf(line, sizeof(line), "%-10s %-16s %6s %8s %8s %8s %8s\n", "variant",
           "split", "pairs", "rho", "slope", "MAE", "RMSE");
  out << line;
  for (const auto& r : report.rows) {
    snprintf(line, sizeof(line), "%-10s %-16s %6lld %8.4f %8.4f %8.3f %8.3f\n",
             r.variant.c_str(), r.split.c_str(),
             static_cast<long long>(r.pairs), r.pearson, r.slope, r.mae,
             r.rmse);
    out << line;
  }
  for (const auto& [variant, rho] : report.aggregated) {
    snprintf(line, sizeof(line), "%-10s %-16s %6s %8.4f\n", variant.c_str(),
             "fisher-z", "-", rho);
    out << line;
  }
  return out.str();
}

}  // namespace sepremix::eval
