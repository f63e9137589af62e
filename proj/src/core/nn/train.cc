// src/core/nn/train.cc

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

#include "core/nn/train.h"

#include <algorithm>
#include <numeric>

#include "core/common.h"

namespace sepremix::nn {

void AugmentPhaseInversion(Batch<float>* inputs, std::vector<float>* targets) {
  const int64_t n = inputs->b;
  Batch<float> doubled;
  doubled.Resize(2 * n, inputs->c, inputs->l);
  const int64_t per = inputs->per_example();
  for (int64_t i = 0; i < n; ++i) {
    const float* src = inputs->example(i);
    float* dst = doubled.example(i);
    std::copy(src, src + per, dst);
    float* inv = doubled.example(n + i);
    for (int64_t j = 0; j < per; ++j) inv[j] = -src[j];
  }
  *inputs = std::move(doubled);
  targets->reserve(2 * n);
  for (int64_t i = 0; i < n; ++i) targets->push_back((*targets)[i]);
}

namespace {

void FillBatch(const ExampleSource& source, const std::vector<int64_t>& order,
               int64_t begin, int64_t end, Batch<float>* inputs,
               std::vector<float>* targets) {
  const int64_t n = end - begin;
  inputs->Resize(n, source.channels(), source.input_length());
  targets->resize(n);
  for (int64_t i = 0; i < n; ++i)
    source.Get(order[begin + i], inputs->example(i), &(*targets)[i]);
}

double Evaluate(Network<float>* network, const ExampleSource& source,
                int64_t eval_batch) {
  double total_sq = 0.0;
  const int64_t n = source.size();
  Batch<float> inputs, outputs;
  std::vector<float> targets;
  std::vector<int64_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int64_t at = 0; at < n; at += eval_batch) {
    const int64_t end = std::min(n, at + eval_batch);
    FillBatch(source, order, at, end, &inputs, &targets);
    network->Forward(inputs, &outputs, /*train=*/false);
    for (int64_t i = 0; i < outputs.b; ++i) {
      const double d = static_cast<double>(outputs.data[i]) -
                       static_cast<double>(targets[i]);
      total_sq += d * d;
    }
  }
  return total_sq / static_cast<double>(n);
}

struct Snapshot {
  std::vector<std::vector<float>> params;
  std::vector<std::vector<float>> states;
  std::vector<std::vector<float>> opt_grad;
  std::vector<std::vector<float>> opt_update;
  double lr_scale = 0.0;
};

Snapshot TakeSnapshot(Network<float>* network, Adadelta<float>* optimizer) {
  Snapshot s;
  for (auto& p : network->Params()) s.params.push_back(*p.value);
  for (auto& st : network->States()) s.states.push_back(*st.value);
  s.opt_grad = optimizer->acc_grad();
  s.opt_update = optimizer->acc_update();
  s.lr_scale = optimizer->lr_scale();
  return s;
}

void RestoreSnapshot(const Snapshot& s, Network<float>* network,
                     Adadelta<float>* optimizer) {
  auto params = network->Params();
  for (size_t i = 0; i < params.size(); ++i) *params[i].value = s.params[i];
  auto states = network->States();
  for (size_t i = 0; i < states.size(); ++i) *states[i].value = s.states[i];
  optimizer->acc_grad() = s.opt_grad;
  optimizer->acc_update() = s.opt_update;
  optimizer->set_lr_scale(s.lr_scale);
}

}  // namespace

TrainResult Train(Network<float>* network, Adadelta<float>* optimizer,
                  const ExampleSource& train_set, const ExampleSource& valid_set,
                  const TrainOptions& options) {
  Require(train_set.size() > 0, StatusCode::kEmptyDataset,
          "training set is empty");
  Require(valid_set.size() > 0, StatusCode::kEmptyDataset,
          "validation set is empty");
  Require(train_set.channels() == network->config().input_channels,
          StatusCode::kCheckpointMismatch,
          "dataset channel count does not match the network input");

  Rng shuffle_rng(Mix64(options.seed ^ 0xA5A5A5A5DEADBEEFull));
  auto params = network->Params();
  optimizer->Attach(params);

  TrainResult result;
  Snapshot best;
  double best_valid = 0.0;
  PlateauScheduler scheduler(options.plateau_patience);

  std::vector<int64_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);

  Batch<float> inputs, outputs, grad;
  std::vector<float> targets;

  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    const double lr_in_effect = optimizer->lr_scale();
    double train_loss_sum = 0.0;
    int64_t batches = 0;
    for (int64_t at = 0; at < train_set.size(); at += options.batch_size) {
      const int64_t end =
          std::min<int64_t>(train_set.size(), at + options.batch_size);
      FillBatch(train_set, order, at, end, &inputs, &targets);
      if (options.augment_phase_inversion)
        AugmentPhaseInversion(&inputs, &targets);

      network->Forward(inputs, &outputs, /*train=*/true);
      const double loss = Network<float>::MseLoss(outputs, targets, &grad);
      network->ZeroGrads();
      network->Backward(grad);
      optimizer->Step(params);

      train_loss_sum += loss;
      ++batches;
    }

    TrainRecord record;
    record.epoch = epoch;
    record.train_mse = train_loss_sum / static_cast<double>(batches);
    record.valid_mse = Evaluate(network, valid_set, options.batch_size);
    record.lr_scale = lr_in_effect;
    result.records.push_back(record);

    const auto outcome = scheduler.Update(record.valid_mse);
    if (outcome.improved) {
      best_valid = record.valid_mse;
      result.best_epoch = epoch;
      best = TakeSnapshot(network, optimizer);
    } else if (outcome.halve) {
      optimizer->HalveLr();
    }

    if (options.on_epoch && !options.on_epoch(record)) break;
  }

  result.best_valid_mse = best_valid;
  RestoreSnapshot(best, network, optimizer);
  return result;
}

}  // namespace sepremix::nn
