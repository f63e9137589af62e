// src/core/fft.h

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

#ifndef SEPREMIX_CORE_FFT_H_
#define SEPREMIX_CORE_FFT_H_

#include <complex>
#include <cstddef>
#include <vector>

namespace sepremix {

// Iterative radix-2 transforms. All frame sizes in this codebase are powers
// of two, so a general-length FFT is not needed.
class Fft {
 public:
  explicit Fft(size_t size);

  size_t size() const { return size_; }

  // In-place complex DFT (no normalization on forward; inverse divides by N).
  void Forward(std::vector<std::complex<double>>* data) const;
  void Inverse(std::vector<std::complex<double>>* data) const;

  // Real input of length N -> N/2+1 non-redundant bins.
  std::vector<std::complex<double>> ForwardReal(
      const std::vector<double>& input) const;
  // Hermitian spectrum of N/2+1 bins -> real signal of length N.
  std::vector<double> InverseReal(
      const std::vector<std::complex<double>>& bins) const;

 private:
  size_t size_;
  std::vector<size_t> bit_reverse_;
  std::vector<std::complex<double>> twiddles_;  // exp(-2*pi*i*k/N), k < N/2
};

}  // namespace sepremix

#endif  // SEPREMIX_CORE_FFT_H_
