// src/core/evalharness.h

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

#ifndef SEPREMIX_CORE_EVALHARNESS_H_
#define SEPREMIX_CORE_EVALHARNESS_H_

#include <string>
#include <vector>

namespace sepremix::eval {

// Paired predicted/reference scores for one (variant, split) cell.
struct ScorePairSet {
  std::vector<std::string> ids;
  std::vector<double> predicted;
  std::vector<double> reference;
};

// Agreement statistics. All computed in double precision; degenerate
// variance raises instead of producing NaN.
double Pearson(const std::vector<double>& x, const std::vector<double>& y);
double RegressionSlope(const std::vector<double>& reference,
                       const std::vector<double>& predicted);
double MeanAbsoluteError(const std::vector<double>& x,
                         const std::vector<double>& y);
double RootMeanSquaredError(const std::vector<double>& x,
                            const std::vector<double>& y);
// atanh-average-tanh; every correlation must lie strictly inside (-1, 1).
double FisherAggregate(const std::vector<double>& correlations);

struct EvalRow {
  std::string variant;
  std::string split;
  int64_t pairs = 0;
  double pearson = 0.0;
  double slope = 0.0;
  double mae = 0.0;
  double rmse = 0.0;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  // Fisher-z aggregated correlation per variant, present when a variant has
  // two or more splits.
  std::vector<std::pair<std::string, double>> aggregated;
};

struct PredictionRecord {
  std::string id;
  std::string variant;
  std::string split;  // optional; empty collapses to one split
  double value = 0.0;
};

// Joins predictions with references on item id within each (variant, split)
// and computes the four statistics; unmatched ids raise kJoinFailure with
// the offending id in the message.
EvalReport EvaluateRun(const std::vector<PredictionRecord>& predictions,
                       const std::vector<PredictionRecord>& references);

// Line-delimited JSON with an "id" field and a "value", "label", or "q_hat"
// score field; optional "variant" and "split"; records with "type":"meta"
// are skipped.
std::vector<PredictionRecord> ReadRecords(const std::string& path);

std::string FormatReportTable(const EvalReport& report);

}  // namespace sepremix::eval

#endif  // SEPREMIX_CORE_EVALHARNESS_H_
