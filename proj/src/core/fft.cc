// src/core/fft.cc

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

#include "core/fft.h"

#include <cmath>

#include "core/common.h"

namespace sepremix {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Fft::Fft(size_t size) : size_(size) {
  Require(size >= 2 && (size & (size - 1)) == 0, StatusCode::kInvalidArgument,
          "FFT size must be a power of two >= 2");
  bit_reverse_.resize(size);
  size_t log2n = 0;
  while ((size_t{1} << log2n) < size) ++log2n;
  for (size_t i = 0; i < size; ++i) {
    size_t r = 0;
    for (size_t b = 0; b < log2n; ++b)
      if (i & (size_t{1} << b)) r |= size_t{1} << (log2n - 1 - b);
    bit_reverse_[i] = r;
  }
  twiddles_.resize(size / 2);
  for (size_t k = 0; k < size / 2; ++k) {
    const double a = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(size);
    twiddles_[k] = {std::cos(a), std::sin(a)};
  }
}

void Fft::Forward(std::vector<std::complex<double>>* data) const {
  Require(data->size() == size_, StatusCode::kInvalidArgument,
          "FFT input size mismatch");
  auto& a = *data;
  for (size_t i = 0; i < size_; ++i) {
    const size_t j = bit_reverse_[i];
    if (j > i) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= size_; len <<= 1) {
    const size_t half = len >> 1;
    const size_t stride = size_ / len;
    for (size_t start = 0; start < size_; start += len) {
      for (size_t k = 0; k < half; ++k) {
        const std::complex<double> w = twiddles_[k * stride];
        const std::complex<double> u = a[start + k];
        const std::complex<double> t = w * a[start + k + half];
        a[start + k] = u + t;
        a[start + k + half] = u - t;
      }
    }
  }
}

void Fft::Inverse(std::vector<std::complex<double>>* data) const {
  for (auto& v : *data) v = std::conj(v);
  Forward(data);
  const double inv = 1.0 / static_cast<double>(size_);
  for (auto& v : *data) v = std::conj(v) * inv;
}

std::vector<std::complex<double>> Fft::ForwardReal(
    const std::vector<double>& input) const {
  Require(input.size() == size_, StatusCode::kInvalidArgument,
          "FFT input size mismatch");
  std::vector<std::complex<double>> buf(size_);
  for (size_t i = 0; i < size_; ++i) buf[i] = {input[i], 0.0};
  Forward(&buf);
  buf.resize(size_ / 2 + 1);
  return buf;
}

std::vector<double> Fft::InverseReal(
    const std::vector<std::complex<double>>& bins) const {
  Require(bins.size() == size_ / 2 + 1, StatusCode::kInvalidArgument,
          "spectrum size mismatch");
  std::vector<std::complex<double>> buf(size_);
  for (size_t k = 0; k <= size_ / 2; ++k) buf[k] = bins[k];
  for (size_t k = size_ / 2 + 1; k < size_; ++k)
    buf[k] = std::conj(bins[size_ - k]);
  Inverse(&buf);
  std::vector<double> out(size_);
  for (size_t i = 0; i < size_; ++i) out[i] = buf[i].real();
  return out;
}

}  // namespace sepremix
