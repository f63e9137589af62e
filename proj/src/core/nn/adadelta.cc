// src/core/nn/adadelta.cc

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

#include "core/nn/adadelta.h"

#include <cmath>

#include "core/common.h"

namespace sepremix::nn {

template <typename T>
Adadelta<T>::Adadelta(Options options)
    : options_(options), lr_scale_(options.initial_lr) {}

template <typename T>
void Adadelta<T>::Attach(const std::vector<ParamRef<T>>& params) {
  acc_grad_.clear();
  acc_update_.clear();
  for (const auto& p : params) {
    acc_grad_.emplace_back(p.value->size(), T(0));
    acc_update_.emplace_back(p.value->size(), T(0));
  }
}

template <typename T>
void Adadelta<T>::Step(const std::vector<ParamRef<T>>& params) {
  Require(params.size() == acc_grad_.size(), StatusCode::kInvalidArgument,
          "optimizer not attached to this parameter set");
  const double rho = options_.rho;
  const double eps = options_.epsilon;
  for (size_t i = 0; i < params.size(); ++i) {
    auto& value = *params[i].value;
    auto& grad = *params[i].grad;
    auto& eg2 = acc_grad_[i];
    auto& ed2 = acc_update_[i];
    for (size_t j = 0; j < value.size(); ++j) {
      const double g = static_cast<double>(grad[j]);
      const double eg = rho * static_cast<double>(eg2[j]) + (1.0 - rho) * g * g;
      const double delta =
          -std::sqrt((static_cast<double>(ed2[j]) + eps) / (eg + eps)) * g;
      const double ed =
          rho * static_cast<double>(ed2[j]) + (1.0 - rho) * delta * delta;
      eg2[j] = static_cast<T>(eg);
      ed2[j] = static_cast<T>(ed);
      value[j] = static_cast<T>(static_cast<double>(value[j]) +
                                lr_scale_ * delta);
    }
  }
}

template class Adadelta<float>;
template class Adadelta<double>;

}  // namespace sepremix::nn
