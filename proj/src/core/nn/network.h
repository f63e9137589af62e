// src/core/nn/network.h

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

#ifndef SEPREMIX_CORE_NN_NETWORK_H_
#define SEPREMIX_CORE_NN_NETWORK_H_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "core/kv_config.h"
#include "core/nn/layers.h"

namespace sepremix::nn {

// Waveform regression network: a wide strided front convolution, six
// conv/pool blocks, two dropout-regularized dense layers, and a clamped
// scalar output. Defaults reproduce the full-size architecture; the
// dimensions are configurable so tests can run reduced instances.
struct NetworkConfig {
  int input_channels = 2;
  int64_t input_length = 192000;
  int64_t front_filters = 257;
  int64_t front_kernel = 1024;
  int64_t front_stride = 512;
  int block_count = 6;
  int64_t block_filters = 96;
  int64_t block_kernel = 3;
  int64_t dense_units = 256;
  double dropout_rate = 0.4;
  double output_min = 0.0;
  double output_max = 100.0;
  double bn_momentum = 0.1;
  double bn_epsilon = 1e-5;

  std::string Serialize() const;
  static NetworkConfig Deserialize(const std::string& text);
  uint32_t Hash() const;
};

template <typename T>
class Network {
 public:
  explicit Network(const NetworkConfig& config);

  const NetworkConfig& config() const { return config_; }
  uint64_t seed() const { return seed_; }

  // Deterministic parameter initialization from the seed.
  void Init(uint64_t seed);

  // input is [batch, channels, length] contiguous.
  void Forward(const Batch<T>& input, Batch<T>* output, bool train);
  // Gradient of the scalar outputs; fills parameter gradients.
  void Backward(const Batch<T>& grad_output);
  void ZeroGrads();

  // Mean-over-batch MSE and its output gradient.
  static double MseLoss(const Batch<T>& prediction,
                        const std::vector<T>& targets,
                        Batch<T>* grad_output);

  std::vector<ParamRef<T>> Params();
  std::vector<StateRef<T>> States();
  int64_t TrainableParameterCount() const;
  // One (layer name, trainable count) row per layer with parameters.
  std::vector<std::pair<std::string, int64_t>> ParameterLedger() const;
  // (channels, length) after each layer of the most recent forward pass.
  const std::vector<std::pair<int64_t, int64_t>>& shape_trace() const {
    return shape_trace_;
  }
  std::vector<std::pair<std::string, std::pair<int64_t, int64_t>>>
  StaticShapes() const;

  // Gradient-check support: freeze dropout masks and normalization stats.
  void SetFrozen(bool frozen);

  Rng* rng() { return &rng_; }

 private:
  NetworkConfig config_;
  uint64_t seed_ = 0;
  Rng rng_;
  std::vector<std::unique_ptr<Layer<T>>> layers_;
  std::vector<std::string> layer_names_;
  std::vector<std::pair<int64_t, int64_t>> shape_trace_;
};

using NetworkF = Network<float>;
using NetworkD = Network<double>;

}  // namespace sepremix::nn

#endif  // SEPREMIX_CORE_NN_NETWORK_H_
