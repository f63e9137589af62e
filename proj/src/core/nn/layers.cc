// src/core/nn/layers.cc

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

#include "core/nn/layers.h"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "core/common.h"
#include "core/nn/blas_gemm.h"

namespace sepremix::nn {

namespace {

template <typename T>
void UniformFanIn(std::vector<T>* v, int64_t fan_in, Rng* rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (auto& x : *v) x = static_cast<T>(dist(*rng));
}

}  // namespace

// ---------------------------------------------------------------------------
// Conv1d

template <typename T>
Conv1d<T>::Conv1d(int64_t filters, int64_t kernel, int64_t stride)
    : filters_(filters), kernel_(kernel), stride_(stride) {}

template <typename T>
void Conv1d<T>::Build(int64_t in_c, int64_t in_l) {
  this->in_c_ = in_c;
  this->in_l_ = in_l;
  this->out_c_ = filters_;
  this->out_l_ = (in_l + stride_ - 1) / stride_;
  const int64_t pad_total =
      std::max<int64_t>(0, (this->out_l_ - 1) * stride_ + kernel_ - in_l);
  pad_left_ = pad_total / 2;
  weight_.assign(filters_ * in_c * kernel_, T(0));
  bias_.assign(filters_, T(0));
  dweight_.assign(weight_.size(), T(0));
  dbias_.assign(bias_.size(), T(0));
}

template <typename T>
void Conv1d<T>::InitParams(Rng* rng) {
  UniformFanIn(&weight_, this->in_c_ * kernel_, rng);
  UniformFanIn(&bias_, this->in_c_ * kernel_, rng);
}

template <typename T>
void Conv1d<T>::Im2Col(const T* x, T* cols) const {
  // cols is [in_c * kernel, out_l]
  const int64_t L = this->in_l_;
  const int64_t out_l = this->out_l_;
  for (int64_t c = 0; c < this->in_c_; ++c) {
    const T* xc = x + c * L;
    for (int64_t k = 0; k < kernel_; ++k) {
      T* row = cols + (c * kernel_ + k) * out_l;
      for (int64_t t = 0; t < out_l; ++t) {
        const int64_t idx = t * stride_ - pad_left_ + k;
        row[t] = (idx >= 0 && idx < L) ? xc[idx] : T(0);
      }
    }
  }
}

template <typename T>
void Conv1d<T>::Col2Im(const T* cols, T* dx) const {
  const int64_t L = this->in_l_;
  const int64_t out_l = this->out_l_;
  std::memset(dx, 0, sizeof(T) * this->in_c_ * L);
  for (int64_t c = 0; c < this->in_c_; ++c) {
    T* dxc = dx + c * L;
    for (int64_t k = 0; k < kernel_; ++k) {
      const T* row = cols + (c * kernel_ + k) * out_l;
      for (int64_t t = 0; t < out_l; ++t) {
        const int64_t idx = t * stride_ - pad_left_ + k;
        if (idx >= 0 && idx < L) dxc[idx] += row[t];
      }
    }
  }
}

template <typename T>
void Conv1d<T>::Forward(const Batch<T>& in, Batch<T>* out, bool /*train*/) {
  saved_input_ = in;
  out->Resize(in.b, this->out_c_, this->out_l_);
  const int64_t ck = this->in_c_ * kernel_;
  const int threads = NumThreads();
  std::vector<std::vector<T>> scratch(threads,
                                      std::vector<T>(ck * this->out_l_));
#pragma omp parallel for schedule(static) num_threads(threads)
  for (int64_t i = 0; i < in.b; ++i) {
    auto& cols = scratch[omp_get_thread_num()];
    Im2Col(in.example(i), cols.data());
    T* y = out->example(i);
    Gemm(false, false, filters_, this->out_l_, ck, T(1), weight_.data(), ck,
         cols.data(), this->out_l_, T(0), y, this->out_l_);
    for (int64_t f = 0; f < filters_; ++f) {
      T* yf = y + f * this->out_l_;
      const T b = bias_[f];
      for (int64_t t = 0; t < this->out_l_; ++t) yf[t] += b;
    }
  }
}

template <typename T>
void Conv1d<T>::Backward(const Batch<T>& grad_out, Batch<T>* grad_in) {
  const Batch<T>& in = saved_input_;
  grad_in->Resize(in.b, this->in_c_, this->in_l_);
  const int64_t ck = this->in_c_ * kernel_;
  const int64_t out_l = this->out_l_;
  const int threads = NumThreads();

  // Per-thread weight/bias accumulators, reduced in fixed order below.
  std::vector<std::vector<T>> dw(threads, std::vector<T>(weight_.size(), T(0)));
  std::vector<std::vector<T>> db(threads, std::vector<T>(bias_.size(), T(0)));
  std::vector<std::vector<T>> scratch_cols(threads, std::vector<T>(ck * out_l));
  std::vector<std::vector<T>> scratch_dcols(threads, std::vector<T>(ck * out_l));

#pragma omp parallel for schedule(static) num_threads(threads)
  for (int64_t i = 0; i < in.b; ++i) {
    const int tid = omp_get_thread_num();
    auto& cols = scratch_cols[tid];
    auto& dcols = scratch_dcols[tid];
    const T* dy = grad_out.example(i);

    Im2Col(in.example(i), cols.data());
    // dW += dY * cols^T
    Gemm(false, true, filters_, ck, out_l, T(1), dy, out_l, cols.data(), out_l,
         T(1), dw[tid].data(), ck);
    for (int64_t f = 0; f < filters_; ++f) {
      const T* dyf = dy + f * out_l;
      T s = T(0);
      for (int64_t t = 0; t < out_l; ++t) s += dyf[t];
      db[tid][f] += s;
    }
    // dX = W^T * dY, scattered back through the padding.
    Gemm(true, false, ck, out_l, filters_, T(1), weight_.data(), ck, dy, out_l,
         T(0), dcols.data(), out_l);
    Col2Im(dcols.data(), grad_in->example(i));
  }

  for (int t = 0; t < threads; ++t) {
    for (size_t j = 0; j < weight_.size(); ++j) dweight_[j] += dw[t][j];
    for (size_t j = 0; j < bias_.size(); ++j) dbias_[j] += db[t][j];
  }
}

template <typename T>
std::vector<ParamRef<T>> Conv1d<T>::Params() {
  return {{"weight", &weight_, &dweight_}, {"bias", &bias_, &dbias_}};
}

// ---------------------------------------------------------------------------
// BatchNorm

template <typename T>
BatchNorm<T>::BatchNorm(double momentum, double epsilon)
    : momentum_(momentum), epsilon_(epsilon) {}

template <typename T>
void BatchNorm<T>::Build(int64_t in_c, int64_t in_l) {
  this->in_c_ = this->out_c_ = in_c;
  this->in_l_ = this->out_l_ = in_l;
  gamma_.assign(in_c, T(1));
  beta_.assign(in_c, T(0));
  dgamma_.assign(in_c, T(0));
  dbeta_.assign(in_c, T(0));
  running_mean_.assign(in_c, T(0));
  running_var_.assign(in_c, T(1));
  mu_.assign(in_c, T(0));
  var_.assign(in_c, T(1));
}

template <typename T>
void BatchNorm<T>::Forward(const Batch<T>& in, Batch<T>* out, bool train) {
  saved_input_ = in;
  out->Resize(in.b, in.c, in.l);
  const int64_t n = in.b * in.l;
  used_batch_stats_ = train && !freeze_stats_;

  if (used_batch_stats_) {
    for (int64_t c = 0; c < in.c; ++c) {
      double sum = 0.0;
      for (int64_t i = 0; i < in.b; ++i) {
        const T* x = in.example(i) + c * in.l;
        for (int64_t t = 0; t < in.l; ++t) sum += static_cast<double>(x[t]);
      }
      const double mean = sum / n;
      double sq = 0.0;
      for (int64_t i = 0; i < in.b; ++i) {
        const T* x = in.example(i) + c * in.l;
        for (int64_t t = 0; t < in.l; ++t) {
          const double d = static_cast<double>(x[t]) - mean;
          sq += d * d;
        }
      }
      const double biased_var = sq / n;
      mu_[c] = static_cast<T>(mean);
      var_[c] = static_cast<T>(biased_var);
      const double unbiased = n > 1 ? sq / (n - 1) : biased_var;
      running_mean_[c] = static_cast<T>((1.0 - momentum_) * running_mean_[c] +
                                        momentum_ * mean);
      running_var_[c] = static_cast<T>((1.0 - momentum_) * running_var_[c] +
                                       momentum_ * unbiased);
    }
  } else {
    mu_ = running_mean_;
    var_ = running_var_;
  }

  for (int64_t c = 0; c < in.c; ++c) {
    const T inv_std = static_cast<T>(
        1.0 / std::sqrt(static_cast<double>(var_[c]) + epsilon_));
    const T g = gamma_[c], b = beta_[c], m = mu_[c];
    for (int64_t i = 0; i < in.b; ++i) {
      const T* x = in.example(i) + c * in.l;
      T* y = out->example(i) + c * in.l;
      for (int64_t t = 0; t < in.l; ++t) y[t] = g * (x[t] - m) * inv_std + b;
    }
  }
}

template <typename T>
void BatchNorm<T>::Backward(const Batch<T>& grad_out, Batch<T>* grad_in) {
  const Batch<T>& in = saved_input_;
  grad_in->Resize(in.b, in.c, in.l);
  const int64_t n = in.b * in.l;

  for (int64_t c = 0; c < in.c; ++c) {
    const double mean = static_cast<double>(mu_[c]);
    const double inv_std = 1.0 / std::sqrt(static_cast<double>(var_[c]) + epsilon_);
    const double g = static_cast<double>(gamma_[c]);

    double sum_dy = 0.0, sum_dy_xhat = 0.0;
    for (int64_t i = 0; i < in.b; ++i) {
      const T* x = in.example(i) + c * in.l;
      const T* dy = grad_out.example(i) + c * in.l;
      for (int64_t t = 0; t < in.l; ++t) {
        const double xhat = (static_cast<double>(x[t]) - mean) * inv_std;
        sum_dy += static_cast<double>(dy[t]);
        sum_dy_xhat += static_cast<double>(dy[t]) * xhat;
      }
    }
    dbeta_[c] += static_cast<T>(sum_dy);
    dgamma_[c] += static_cast<T>(sum_dy_xhat);

    if (used_batch_stats_) {
      // Batch statistics depend on x; use the closed-form gradient.
      for (int64_t i = 0; i < in.b; ++i) {
        const T* x = in.example(i) + c * in.l;
        const T* dy = grad_out.example(i) + c * in.l;
        T* dx = grad_in->example(i) + c * in.l;
        for (int64_t t = 0; t < in.l; ++t) {
          const double xhat = (static_cast<double>(x[t]) - mean) * inv_std;
          const double v = g * inv_std *
                           (static_cast<double>(dy[t]) - sum_dy / n -
                            xhat * sum_dy_xhat / n);
          dx[t] = static_cast<T>(v);
        }
      }
    } else {
      const double scale = g * inv_std;
      for (int64_t i = 0; i < in.b; ++i) {
        const T* dy = grad_out.example(i) + c * in.l;
        T* dx = grad_in->example(i) + c * in.l;
        for (int64_t t = 0; t < in.l; ++t)
          dx[t] = static_cast<T>(scale * static_cast<double>(dy[t]));
      }
    }
  }
}

template <typename T>
std::vector<ParamRef<T>> BatchNorm<T>::Params() {
  return {{"gamma", &gamma_, &dgamma_}, {"beta", &beta_, &dbeta_}};
}

template <typename T>
std::vector<StateRef<T>> BatchNorm<T>::States() {
  return {{"running_mean", &running_mean_}, {"running_var", &running_var_}};
}

template <typename T>
void BatchNorm<T>::InitParams(Rng* /*rng*/) {
  std::fill(gamma_.begin(), gamma_.end(), T(1));
  std::fill(beta_.begin(), beta_.end(), T(0));
  std::fill(running_mean_.begin(), running_mean_.end(), T(0));
  std::fill(running_var_.begin(), running_var_.end(), T(1));
}

// ---------------------------------------------------------------------------
// Relu

template <typename T>
void Relu<T>::Build(int64_t in_c, int64_t in_l) {
  this->in_c_ = this->out_c_ = in_c;
  this->in_l_ = this->out_l_ = in_l;
}

template <typename T>
void Relu<T>::Forward(const Batch<T>& in, Batch<T>* out, bool /*train*/) {
  out->Resize(in.b, in.c, in.l);
  const int64_t n = static_cast<int64_t>(in.data.size());
  for (int64_t i = 0; i < n; ++i)
    out->data[i] = in.data[i] > T(0) ? in.data[i] : T(0);
  saved_output_ = *out;
}

template <typename T>
void Relu<T>::Backward(const Batch<T>& grad_out, Batch<T>* grad_in) {
  grad_in->Resize(grad_out.b, grad_out.c, grad_out.l);
  const int64_t n = static_cast<int64_t>(grad_out.data.size());
  for (int64_t i = 0; i < n; ++i)
    grad_in->data[i] = saved_output_.data[i] > T(0) ? grad_out.data[i] : T(0);
}

// ---------------------------------------------------------------------------
// MaxPool2

template <typename T>
void MaxPool2<T>::Build(int64_t in_c, int64_t in_l) {
  this->in_c_ = in_c;
  this->in_l_ = in_l;
  this->out_c_ = in_c;
  this->out_l_ = (in_l + 1) / 2;
}

template <typename T>
void MaxPool2<T>::Forward(const Batch<T>& in, Batch<T>* out, bool /*train*/) {
  out->Resize(in.b, in.c, this->out_l_);
  argmax_.assign(in.b * in.c * this->out_l_, 0);
  saved_batch_ = in.b;
  for (int64_t i = 0; i < in.b; ++i) {
    for (int64_t c = 0; c < in.c; ++c) {
      const T* x = in.example(i) + c * in.l;
      T* y = out->example(i) + c * this->out_l_;
      int32_t* am = argmax_.data() + (i * in.c + c) * this->out_l_;
      for (int64_t t = 0; t < this->out_l_; ++t) {
        const int64_t a = 2 * t;
        const int64_t b = 2 * t + 1;
        if (b < in.l && in.example(i)[c * in.l + b] > x[a]) {
          y[t] = x[b];
          am[t] = static_cast<int32_t>(b);
        } else {
          y[t] = x[a];
          am[t] = static_cast<int32_t>(a);
        }
      }
    }
  }
}

template <typename T>
void MaxPool2<T>::Backward(const Batch<T>& grad_out, Batch<T>* grad_in) {
  grad_in->Resize(saved_batch_, this->in_c_, this->in_l_);
  for (int64_t i = 0; i < grad_out.b; ++i) {
    for (int64_t c = 0; c < grad_out.c; ++c) {
      const T* dy = grad_out.example(i) + c * this->out_l_;
      T* dx = grad_in->example(i) + c * this->in_l_;
      const int32_t* am = argmax_.data() + (i * grad_out.c + c) * this->out_l_;
      for (int64_t t = 0; t < this->out_l_; ++t) dx[am[t]] += dy[t];
    }
  }
}

// ---------------------------------------------------------------------------
// Flatten

template <typename T>
void Flatten<T>::Build(int64_t in_c, int64_t in_l) {
  this->in_c_ = in_c;
  this->in_l_ = in_l;
  this->out_c_ = in_c * in_l;
  this->out_l_ = 1;
}

template <typename T>
void Flatten<T>::Forward(const Batch<T>& in, Batch<T>* out, bool /*train*/) {
  *out = in;
  out->c = this->out_c_;
  out->l = 1;
}

template <typename T>
void Flatten<T>::Backward(const Batch<T>& grad_out, Batch<T>* grad_in) {
  *grad_in = grad_out;
  grad_in->c = this->in_c_;
  grad_in->l = this->in_l_;
}

// ---------------------------------------------------------------------------
// Dense

template <typename T>
Dense<T>::Dense(int64_t units, double bias_init)
    : units_(units), bias_init_(bias_init) {}

template <typename T>
void Dense<T>::Build(int64_t in_c, int64_t in_l) {
  Require(in_l == 1, StatusCode::kInvalidArgument,
          "dense layer expects flattened input");
  this->in_c_ = in_c;
  this->in_l_ = 1;
  this->out_c_ = units_;
  this->out_l_ = 1;
  weight_.assign(units_ * in_c, T(0));
  bias_.assign(units_, T(0));
  dweight_.assign(weight_.size(), T(0));
  dbias_.assign(bias_.size(), T(0));
}

template <typename T>
void Dense<T>::InitParams(Rng* rng) {
  UniformFanIn(&weight_, this->in_c_, rng);
  UniformFanIn(&bias_, this->in_c_, rng);
  if (bias_init_ != 0.0)
    std::fill(bias_.begin(), bias_.end(), static_cast<T>(bias_init_));
}

template <typename T>
void Dense<T>::Forward(const Batch<T>& in, Batch<T>* out, bool /*train*/) {
  saved_input_ = in;
  out->Resize(in.b, units_, 1);
  // Y[B, U] = X[B, F] * W^T
  Gemm(false, true, in.b, units_, this->in_c_, T(1), in.data.data(),
       this->in_c_, weight_.data(), this->in_c_, T(0), out->data.data(),
       units_);
  for (int64_t i = 0; i < in.b; ++i) {
    T* y = out->example(i);
    for (int64_t u = 0; u < units_; ++u) y[u] += bias_[u];
  }
}

template <typename T>
void Dense<T>::Backward(const Batch<T>& grad_out, Batch<T>* grad_in) {
  const Batch<T>& in = saved_input_;
  grad_in->Resize(in.b, this->in_c_, 1);
  // dW[U, F] += dY^T[U, B] * X[B, F]
  Gemm(true, false, units_, this->in_c_, in.b, T(1), grad_out.data.data(),
       units_, in.data.data(), this->in_c_, T(1), dweight_.data(),
       this->in_c_);
  for (int64_t i = 0; i < in.b; ++i) {
    const T* dy = grad_out.example(i);
    for (int64_t u = 0; u < units_; ++u) dbias_[u] += dy[u];
  }
  // dX[B, F] = dY[B, U] * W[U, F]
  Gemm(false, false, in.b, this->in_c_, units_, T(1), grad_out.data.data(),
       units_, weight_.data(), this->in_c_, T(0), grad_in->data.data(),
       this->in_c_);
}

template <typename T>
std::vector<ParamRef<T>> Dense<T>::Params() {
  return {{"weight", &weight_, &dweight_}, {"bias", &bias_, &dbias_}};
}

// ---------------------------------------------------------------------------
// Dropout

template <typename T>
Dropout<T>::Dropout(double rate, Rng* rng) : rate_(rate), rng_(rng) {
  Require(rate >= 0.0 && rate < 1.0, StatusCode::kInvalidArgument,
          "dropout rate must be in [0, 1)");
}

template <typename T>
void Dropout<T>::Build(int64_t in_c, int64_t in_l) {
  this->in_c_ = this->out_c_ = in_c;
  this->in_l_ = this->out_l_ = in_l;
}

template <typename T>
void Dropout<T>::Forward(const Batch<T>& in, Batch<T>* out, bool train) {
  out->Resize(in.b, in.c, in.l);
  if (!train || rate_ == 0.0) {
    out->data = in.data;
    mask_.clear();
    return;
  }
  const size_t n = in.data.size();
  if (!freeze_mask_ || mask_.size() != n) {
    mask_.resize(n);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    const T keep_scale = static_cast<T>(1.0 / (1.0 - rate_));
    for (size_t i = 0; i < n; ++i)
      mask_[i] = dist(*rng_) < rate_ ? T(0) : keep_scale;
  }
  for (size_t i = 0; i < n; ++i) out->data[i] = in.data[i] * mask_[i];
}

template <typename T>
void Dropout<T>::Backward(const Batch<T>& grad_out, Batch<T>* grad_in) {
  grad_in->Resize(grad_out.b, grad_out.c, grad_out.l);
  if (mask_.empty()) {
    grad_in->data = grad_out.data;
    return;
  }
  for (size_t i = 0; i < grad_out.data.size(); ++i)
    grad_in->data[i] = grad_out.data[i] * mask_[i];
}

// ---------------------------------------------------------------------------
// HardTanh

template <typename T>
HardTanh<T>::HardTanh(double lo, double hi) : lo_(lo), hi_(hi) {}

template <typename T>
void HardTanh<T>::Build(int64_t in_c, int64_t in_l) {
  this->in_c_ = this->out_c_ = in_c;
  this->in_l_ = this->out_l_ = in_l;
}

template <typename T>
void HardTanh<T>::Forward(const Batch<T>& in, Batch<T>* out, bool /*train*/) {
  saved_input_ = in;
  out->Resize(in.b, in.c, in.l);
  const T lo = static_cast<T>(lo_), hi = static_cast<T>(hi_);
  for (size_t i = 0; i < in.data.size(); ++i)
    out->data[i] = std::min(hi, std::max(lo, in.data[i]));
}

template <typename T>
void HardTanh<T>::Backward(const Batch<T>& grad_out, Batch<T>* grad_in) {
  grad_in->Resize(grad_out.b, grad_out.c, grad_out.l);
  const T lo = static_cast<T>(lo_), hi = static_cast<T>(hi_);
  for (size_t i = 0; i < grad_out.data.size(); ++i) {
    const T x = saved_input_.data[i];
    grad_in->data[i] = (x > lo && x < hi) ? grad_out.data[i] : T(0);
  }
}

template class Conv1d<float>;
template class Conv1d<double>;
template class BatchNorm<float>;
template class BatchNorm<double>;
template class Relu<float>;
template class Relu<double>;
template class MaxPool2<float>;
template class MaxPool2<double>;
template class Flatten<float>;
template class Flatten<double>;
template class Dense<float>;
template class Dense<double>;
template class Dropout<float>;
template class Dropout<double>;
template class HardTanh<float>;
template class HardTanh<double>;

}  // namespace sepremix::nn
