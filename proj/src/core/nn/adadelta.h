// src/core/nn/adadelta.h

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

#ifndef SEPREMIX_CORE_NN_ADADELTA_H_
#define SEPREMIX_CORE_NN_ADADELTA_H_

#include <vector>

#include "core/nn/layers.h"

namespace sepremix::nn {

// ADADELTA: accumulate decayed squared gradients and squared updates, step
// by the ratio of their RMS values, scaled by an external learning rate.
// The rate starts at 0.1 and is halved on validation plateaus by the
// training loop.
template <typename T>
class Adadelta {
 public:
  struct Options {
    double rho = 0.95;
    double epsilon = 1e-6;
    double initial_lr = 0.1;
  };

  explicit Adadelta(Options options = Options());

  // Binds accumulator storage to the given parameter list.
  void Attach(const std::vector<ParamRef<T>>& params);

  // One update over all attached tensors using their current gradients.
  void Step(const std::vector<ParamRef<T>>& params);

  double lr_scale() const { return lr_scale_; }
  void set_lr_scale(double v) { lr_scale_ = v; }
  void HalveLr() { lr_scale_ *= 0.5; }
  const Options& options() const { return options_; }

  std::vector<std::vector<T>>& acc_grad() { return acc_grad_; }
  std::vector<std::vector<T>>& acc_update() { return acc_update_; }

 private:
  Options options_;
  double lr_scale_;
  std::vector<std::vector<T>> acc_grad_;
  std::vector<std::vector<T>> acc_update_;
};

}  // namespace sepremix::nn

#endif  // SEPREMIX_CORE_NN_ADADELTA_H_
