// src/core/nn/network.cc

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

#include "core/nn/network.h"

#include <cmath>

#include "core/common.h"
#include "core/crc32.h"

namespace sepremix::nn {

std::string NetworkConfig::Serialize() const {
  KvConfig kv;
  kv.Set("input_channels", std::to_string(input_channels));
  kv.Set("input_length", std::to_string(input_length));
  kv.Set("front_filters", std::to_string(front_filters));
  kv.Set("front_kernel", std::to_string(front_kernel));
  kv.Set("front_stride", std::to_string(front_stride));
  kv.Set("block_count", std::to_string(block_count));
  kv.Set("block_filters", std::to_string(block_filters));
  kv.Set("block_kernel", std::to_string(block_kernel));
  kv.Set("dense_units", std::to_string(dense_units));
  {
    char buf[64];
    snprintf(buf, sizeof(buf), "%.17g", dropout_rate);
    kv.Set("dropout_rate", buf);
    snprintf(buf, sizeof(buf), "%.17g", output_min);
    kv.Set("output_min", buf);
    snprintf(buf, sizeof(buf), "%.17g", output_max);
    kv.Set("output_max", buf);
    snprintf(buf, sizeof(buf), "%.17g", bn_momentum);
    kv.Set("bn_momentum", buf);
    snprintf(buf, sizeof(buf), "%.17g", bn_epsilon);
    kv.Set("bn_epsilon", buf);
  }
  return kv.ToString();
}

NetworkConfig NetworkConfig::Deserialize(const std::string& text) {
  const KvConfig kv = KvConfig::Parse(text);
  NetworkConfig c;  // missing keys keep the full-size defaults
  c.input_channels = static_cast<int>(kv.GetInt("input_channels", c.input_channels));
  c.input_length = kv.GetInt("input_length", c.input_length);
  c.front_filters = kv.GetInt("front_filters", c.front_filters);
  c.front_kernel = kv.GetInt("front_kernel", c.front_kernel);
  c.front_stride = kv.GetInt("front_stride", c.front_stride);
  c.block_count = static_cast<int>(kv.GetInt("block_count", c.block_count));
  c.block_filters = kv.GetInt("block_filters", c.block_filters);
  c.block_kernel = kv.GetInt("block_kernel", c.block_kernel);
  c.dense_units = kv.GetInt("dense_units", c.dense_units);
  c.dropout_rate = kv.GetDouble("dropout_rate", c.dropout_rate);
  c.output_min = kv.GetDouble("output_min", c.output_min);
  c.output_max = kv.GetDouble("output_max", c.output_max);
  c.bn_momentum = kv.GetDouble("bn_momentum", c.bn_momentum);
  c.bn_epsilon = kv.GetDouble("bn_epsilon", c.bn_epsilon);
  return c;
}

uint32_t NetworkConfig::Hash() const { return Crc32::Of(Serialize()); }

template <typename T>
Network<T>::Network(const NetworkConfig& config) : config_(config) {
  Require(config.input_channels == 1 || config.input_channels == 2,
          StatusCode::kInvalidArgument, "input channels must be 1 or 2");
  Require(config.input_length > 0 && config.front_filters > 0 &&
              config.block_count >= 0 && config.dense_units > 0,
          StatusCode::kInvalidArgument, "invalid network dimensions");

  auto add = [&](std::string name, std::unique_ptr<Layer<T>> layer) {
    layer_names_.push_back(std::move(name));
    layers_.push_back(std::move(layer));
  };

  add("input_norm",
      std::make_unique<BatchNorm<T>>(config.bn_momentum, config.bn_epsilon));
  add("conv_front", std::make_unique<Conv1d<T>>(config.front_filters,
                                                config.front_kernel,
                                                config.front_stride));
  add("relu_front", std::make_unique<Relu<T>>());
  add("norm_front",
      std::make_unique<BatchNorm<T>>(config.bn_momentum, config.bn_epsilon));
  for (int i = 0; i < config.block_count; ++i) {
    const std::string suffix = "_block" + std::to_string(i + 1);
    add("conv" + suffix, std::make_unique<Conv1d<T>>(config.block_filters,
                                                     config.block_kernel, 1));
    add("relu" + suffix, std::make_unique<Relu<T>>());
    add("norm" + suffix,
        std::make_unique<BatchNorm<T>>(config.bn_momentum, config.bn_epsilon));
    add("pool" + suffix, std::make_unique<MaxPool2<T>>());
  }
  add("flatten", std::make_unique<Flatten<T>>());
  add("dense1", std::make_unique<Dense<T>>(config.dense_units));
  add("relu_dense1", std::make_unique<Relu<T>>());
  add("norm_dense1",
      std::make_unique<BatchNorm<T>>(config.bn_momentum, config.bn_epsilon));
  add("dropout1", std::make_unique<Dropout<T>>(config.dropout_rate, &rng_));
  add("dense2", std::make_unique<Dense<T>>(config.dense_units));
  add("relu_dense2", std::make_unique<Relu<T>>());
  add("norm_dense2",
      std::make_unique<BatchNorm<T>>(config.bn_momentum, config.bn_epsilon));
  add("dropout2", std::make_unique<Dropout<T>>(config.dropout_rate, &rng_));
  // Output bias starts mid-range so the clamp is open at initialization.
  add("dense_out", std::make_unique<Dense<T>>(
                       1, 0.5 * (config.output_min + config.output_max)));
  add("output_clamp",
      std::make_unique<HardTanh<T>>(config.output_min, config.output_max));

  int64_t c = config.input_channels;
  int64_t l = config.input_length;
  for (auto& layer : layers_) {
    layer->Build(c, l);
    c = layer->out_c();
    l = layer->out_l();
  }
  Require(c == 1 && l == 1, StatusCode::kInvalidArgument,
          "network must reduce to a scalar output");
}

template <typename T>
void Network<T>::Init(uint64_t seed) {
  seed_ = seed;
  rng_.seed(seed);
  for (auto& layer : layers_) layer->InitParams(&rng_);
}

template <typename T>
void Network<T>::Forward(const Batch<T>& input, Batch<T>* output, bool train) {
  Require(input.c == config_.input_channels && input.l == config_.input_length,
          StatusCode::kInvalidArgument, "input shape mismatch");
  shape_trace_.clear();
  Batch<T> a = input;
  Batch<T> b;
  for (auto& layer : layers_) {
    layer->Forward(a, &b, train);
    shape_trace_.emplace_back(layer->out_c(), layer->out_l());
    std::swap(a, b);
  }
  *output = std::move(a);
}

template <typename T>
void Network<T>::Backward(const Batch<T>& grad_output) {
  Batch<T> g = grad_output;
  Batch<T> h;
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
    (*it)->Backward(g, &h);
    std::swap(g, h);
  }
}

template <typename T>
void Network<T>::ZeroGrads() {
  for (auto& layer : layers_)
    for (auto& p : layer->Params())
      std::fill(p.grad->begin(), p.grad->end(), T(0));
}

template <typename T>
double Network<T>::MseLoss(const Batch<T>& prediction,
                           const std::vector<T>& targets,
                           Batch<T>* grad_output) {
  Require(static_cast<size_t>(prediction.b) == targets.size(),
          StatusCode::kInvalidArgument, "prediction/target count mismatch");
  const int64_t n = prediction.b;
  double loss = 0.0;
  if (grad_output) grad_output->Resize(n, 1, 1);
  for (int64_t i = 0; i < n; ++i) {
    const double d = static_cast<double>(prediction.data[i]) -
                     static_cast<double>(targets[i]);
    loss += d * d;
    if (grad_output)
      grad_output->data[i] = static_cast<T>(2.0 * d / static_cast<double>(n));
  }
  return loss / static_cast<double>(n);
}

template <typename T>
std::vector<ParamRef<T>> Network<T>::Params() {
  std::vector<ParamRef<T>> out;
  for (size_t i = 0; i < layers_.size(); ++i)
    for (auto& p : layers_[i]->Params())
      out.push_back({layer_names_[i] + "." + p.name, p.value, p.grad});
  return out;
}

template <typename T>
std::vector<StateRef<T>> Network<T>::States() {
  std::vector<StateRef<T>> out;
  for (size_t i = 0; i < layers_.size(); ++i)
    for (auto& s : layers_[i]->States())
      out.push_back({layer_names_[i] + "." + s.name, s.value});
  return out;
}

template <typename T>
int64_t Network<T>::TrainableParameterCount() const {
  int64_t total = 0;
  for (auto& layer : layers_)
    for (auto& p : const_cast<Layer<T>*>(layer.get())->Params())
      total += static_cast<int64_t>(p.value->size());
  return total;
}

template <typename T>
std::vector<std::pair<std::string, int64_t>> Network<T>::ParameterLedger()
    const {
  std::vector<std::pair<std::string, int64_t>> out;
  for (size_t i = 0; i < layers_.size(); ++i) {
    int64_t n = 0;
    for (auto& p : const_cast<Layer<T>*>(layers_[i].get())->Params())
      n += static_cast<int64_t>(p.value->size());
    if (n > 0) out.emplace_back(layer_names_[i], n);
  }
  return out;
}

template <typename T>
std::vector<std::pair<std::string, std::pair<int64_t, int64_t>>>
Network<T>::StaticShapes() const {
  std::vector<std::pair<std::string, std::pair<int64_t, int64_t>>> out;
  for (size_t i = 0; i < layers_.size(); ++i)
    out.emplace_back(layer_names_[i],
                     std::make_pair(layers_[i]->out_c(), layers_[i]->out_l()));
  return out;
}

template <typename T>
void Network<T>::SetFrozen(bool frozen) {
  for (auto& layer : layers_) {
    if (auto* bn = dynamic_cast<BatchNorm<T>*>(layer.get()))
      bn->set_freeze_stats(frozen);
    if (auto* do_ = dynamic_cast<Dropout<T>*>(layer.get()))
      do_->set_freeze_mask(frozen);
  }
}

template class Network<float>;
template class Network<double>;

}  // namespace sepremix::nn
