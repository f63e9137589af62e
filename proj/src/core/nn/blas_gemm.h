// src/core/nn/blas_gemm.h

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

#ifndef SEPREMIX_CORE_NN_BLAS_GEMM_H_
#define SEPREMIX_CORE_NN_BLAS_GEMM_H_

#include <cstdint>

namespace sepremix::nn {

// Row-major C[m,n] = alpha * op(A) * op(B) + beta * C. BLAS is pinned to a
// single thread so results do not depend on its internal partitioning;
// parallelism happens across independent examples instead.
void Gemm(bool trans_a, bool trans_b, int64_t m, int64_t n, int64_t k,
          float alpha, const float* a, int64_t lda, const float* b,
          int64_t ldb, float beta, float* c, int64_t ldc);
void Gemm(bool trans_a, bool trans_b, int64_t m, int64_t n, int64_t k,
          double alpha, const double* a, int64_t lda, const double* b,
          int64_t ldb, double beta, double* c, int64_t ldc);

// Worker threads used for example-parallel loops.
void SetNumThreads(int n);
int NumThreads();

}  // namespace sepremix::nn

#endif  // SEPREMIX_CORE_NN_BLAS_GEMM_H_
