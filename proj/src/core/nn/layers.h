// src/core/nn/layers.h

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

#ifndef SEPREMIX_CORE_NN_LAYERS_H_
#define SEPREMIX_CORE_NN_LAYERS_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "core/rng.h"

namespace sepremix::nn {

// Activations and gradients move through the stack as [batch, channels,
// length] blocks; dense stages use length == 1. Data is contiguous with the
// batch as the slowest axis.
template <typename T>
struct Batch {
  std::vector<T> data;
  int64_t b = 0, c = 0, l = 0;

  void Resize(int64_t nb, int64_t nc, int64_t nl) {
    b = nb;
    c = nc;
    l = nl;
    data.assign(static_cast<size_t>(nb * nc * nl), T(0));
  }
  int64_t per_example() const { return c * l; }
  T* example(int64_t i) { return data.data() + i * per_example(); }
  const T* example(int64_t i) const { return data.data() + i * per_example(); }
};

// Named view of a trainable tensor and its gradient.
template <typename T>
struct ParamRef {
  std::string name;
  std::vector<T>* value = nullptr;
  std::vector<T>* grad = nullptr;
};

// Non-trainable persistent tensors (normalization running statistics).
template <typename T>
struct StateRef {
  std::string name;
  std::vector<T>* value = nullptr;
};

template <typename T>
class Layer {
 public:
  virtual ~Layer() = default;

  virtual std::string kind() const = 0;
  // Fixes the output shape given the input shape; called once at build time.
  virtual void Build(int64_t in_c, int64_t in_l) = 0;
  virtual void Forward(const Batch<T>& in, Batch<T>* out, bool train) = 0;
  // Consumes the gradient w.r.t. the layer output, fills the gradient
  // w.r.t. the input and accumulates parameter gradients.
  virtual void Backward(const Batch<T>& grad_out, Batch<T>* grad_in) = 0;

  virtual std::vector<ParamRef<T>> Params() { return {}; }
  virtual std::vector<StateRef<T>> States() { return {}; }
  virtual void InitParams(Rng* /*rng*/) {}

  int64_t out_c() const { return out_c_; }
  int64_t out_l() const { return out_l_; }

 protected:
  int64_t in_c_ = 0, in_l_ = 0;
  int64_t out_c_ = 0, out_l_ = 0;
};

// 1D convolution, zero-padded "same": out_l = ceil(in_l / stride).
template <typename T>
class Conv1d : public Layer<T> {
 public:
  Conv1d(int64_t filters, int64_t kernel, int64_t stride);
  std::string kind() const override { return "conv1d"; }
  void Build(int64_t in_c, int64_t in_l) override;
  void Forward(const Batch<T>& in, Batch<T>* out, bool train) override;
  void Backward(const Batch<T>& grad_out, Batch<T>* grad_in) override;
  std::vector<ParamRef<T>> Params() override;
  void InitParams(Rng* rng) override;

 private:
  void Im2Col(const T* x, T* cols) const;
  void Col2Im(const T* cols, T* dx) const;

  int64_t filters_, kernel_, stride_;
  int64_t pad_left_ = 0;
  std::vector<T> weight_;  // [filters, in_c * kernel]
  std::vector<T> bias_;
  std::vector<T> dweight_, dbias_;
  Batch<T> saved_input_;
};

// Per-channel batch normalization over (batch, length); running statistics
// with momentum update in train mode, frozen statistics otherwise.
template <typename T>
class BatchNorm : public Layer<T> {
 public:
  explicit BatchNorm(double momentum = 0.1, double epsilon = 1e-5);
  std::string kind() const override { return "batchnorm"; }
  void Build(int64_t in_c, int64_t in_l) override;
  void Forward(const Batch<T>& in, Batch<T>* out, bool train) override;
  void Backward(const Batch<T>& grad_out, Batch<T>* grad_in) override;
  std::vector<ParamRef<T>> Params() override;
  std::vector<StateRef<T>> States() override;
  void InitParams(Rng* rng) override;

  // Train-mode forward with running statistics; used by the gradient-check
  // harness to make the function under test stateless.
  void set_freeze_stats(bool v) { freeze_stats_ = v; }

 private:
  double momentum_, epsilon_;
  bool freeze_stats_ = false;
  std::vector<T> gamma_, beta_, dgamma_, dbeta_;
  std::vector<T> running_mean_, running_var_;
  std::vector<T> mu_, var_;  // statistics used in the last forward
  bool used_batch_stats_ = false;
  Batch<T> saved_input_;
};

template <typename T>
class Relu : public Layer<T> {
 public:
  std::string kind() const override { return "relu"; }
  void Build(int64_t in_c, int64_t in_l) override;
  void Forward(const Batch<T>& in, Batch<T>* out, bool train) override;
  void Backward(const Batch<T>& grad_out, Batch<T>* grad_in) override;

 private:
  Batch<T> saved_output_;
};

// Pool size 2, stride 2, ceil semantics: an odd tail keeps its lone sample.
template <typename T>
class MaxPool2 : public Layer<T> {
 public:
  std::string kind() const override { return "maxpool2"; }
  void Build(int64_t in_c, int64_t in_l) override;
  void Forward(const Batch<T>& in, Batch<T>* out, bool train) override;
  void Backward(const Batch<T>& grad_out, Batch<T>* grad_in) override;

 private:
  std::vector<int32_t> argmax_;
  int64_t saved_batch_ = 0;
};

template <typename T>
class Flatten : public Layer<T> {
 public:
  std::string kind() const override { return "flatten"; }
  void Build(int64_t in_c, int64_t in_l) override;
  void Forward(const Batch<T>& in, Batch<T>* out, bool train) override;
  void Backward(const Batch<T>& grad_out, Batch<T>* grad_in) override;
};

template <typename T>
class Dense : public Layer<T> {
 public:
  explicit Dense(int64_t units, double bias_init = 0.0);
  std::string kind() const override { return "dense"; }
  void Build(int64_t in_c, int64_t in_l) override;
  void Forward(const Batch<T>& in, Batch<T>* out, bool train) override;
  void Backward(const Batch<T>& grad_out, Batch<T>* grad_in) override;
  std::vector<ParamRef<T>> Params() override;
  void InitParams(Rng* rng) override;

 private:
  int64_t units_;
  double bias_init_;
  std::vector<T> weight_;  // [units, in_features]
  std::vector<T> bias_;
  std::vector<T> dweight_, dbias_;
  Batch<T> saved_input_;
};

// Inverted dropout; identity in inference mode.
template <typename T>
class Dropout : public Layer<T> {
 public:
  Dropout(double rate, Rng* rng);
  std::string kind() const override { return "dropout"; }
  void Build(int64_t in_c, int64_t in_l) override;
  void Forward(const Batch<T>& in, Batch<T>* out, bool train) override;
  void Backward(const Batch<T>& grad_out, Batch<T>* grad_in) override;

  // Reuse the previously drawn mask (gradient checking).
  void set_freeze_mask(bool v) { freeze_mask_ = v; }

 private:
  double rate_;
  Rng* rng_;
  bool freeze_mask_ = false;
  std::vector<T> mask_;
};

// Clamp to [lo, hi]; gradient passes only strictly inside the interval.
template <typename T>
class HardTanh : public Layer<T> {
 public:
  HardTanh(double lo, double hi);
  std::string kind() const override { return "hardtanh"; }
  void Build(int64_t in_c, int64_t in_l) override;
  void Forward(const Batch<T>& in, Batch<T>* out, bool train) override;
  void Backward(const Batch<T>& grad_out, Batch<T>* grad_in) override;

 private:
  double lo_, hi_;
  Batch<T> saved_input_;
};

}  // namespace sepremix::nn

#endif  // SEPREMIX_CORE_NN_LAYERS_H_
