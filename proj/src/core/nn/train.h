// src/core/nn/train.h

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

#ifndef SEPREMIX_CORE_NN_TRAIN_H_
#define SEPREMIX_CORE_NN_TRAIN_H_

#include <functional>
#include <memory>
#include <vector>

#include "core/nn/adadelta.h"
#include "core/nn/network.h"

namespace sepremix::nn {

// Training examples: an input tensor [channels, length] plus a regression
// target in the output range.
class ExampleSource {
 public:
  virtual ~ExampleSource() = default;
  virtual int64_t size() const = 0;
  virtual int channels() const = 0;
  virtual int64_t input_length() const = 0;
  // Writes channels*input_length floats.
  virtual void Get(int64_t index, float* input, float* target) const = 0;
};

struct TrainRecord {
  int epoch = 0;           // 1-based
  double train_mse = 0.0;  // mean over optimized (augmented) batches
  double valid_mse = 0.0;
  double lr_scale = 0.0;   // rate in effect during this epoch
};

struct TrainOptions {
  int epochs = 50;
  int batch_size = 64;  // doubled by phase-inversion augmentation
  uint64_t seed = 1;
  int plateau_patience = 5;
  double plateau_factor = 0.5;
  Adadelta<float>::Options optimizer;
  bool augment_phase_inversion = true;
  // Called after each epoch; return false to stop early (not used by the
  // CLI, handy for tests).
  std::function<bool(const TrainRecord&)> on_epoch;
};

struct TrainResult {
  std::vector<TrainRecord> records;
  int best_epoch = 0;
  double best_valid_mse = 0.0;
};

// Validation-plateau schedule: after `patience` consecutive epochs without
// a new best validation loss, the learning rate is halved and the counter
// restarts.
class PlateauScheduler {
 public:
  explicit PlateauScheduler(int patience) : patience_(patience) {}

  struct Outcome {
    bool improved = false;
    bool halve = false;
  };
  Outcome Update(double valid_loss) {
    Outcome out;
    if (!seen_any_ || valid_loss < best_) {
      best_ = valid_loss;
      seen_any_ = true;
      counter_ = 0;
      out.improved = true;
    } else if (++counter_ >= patience_) {
      counter_ = 0;
      out.halve = true;
    }
    return out;
  }

 private:
  int patience_;
  int counter_ = 0;
  double best_ = 0.0;
  bool seen_any_ = false;
};

// Doubles a batch by appending phase-inverted waveforms with unchanged
// targets; originals first, inversions after, in example order.
void AugmentPhaseInversion(Batch<float>* inputs, std::vector<float>* targets);

// Trains in place; on return the network holds the parameters and running
// statistics of the epoch with minimum validation loss, and the optimizer
// holds that epoch's state.
TrainResult Train(Network<float>* network, Adadelta<float>* optimizer,
                  const ExampleSource& train_set, const ExampleSource& valid_set,
                  const TrainOptions& options);

}  // namespace sepremix::nn

#endif  // SEPREMIX_CORE_NN_TRAIN_H_
