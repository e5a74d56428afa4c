// Copyright 2026 The hatelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <immintrin.h>

#include "hatelab/simd/kernels.hpp"

namespace hatelab::simd {

namespace {

float dot_f32(const float* x, const float* y, std::size_t n) {
  __m256 acc = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc = _mm256_add_ps(acc, _mm256_mul_ps(_mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i)));
  }
  // [s0+s4, s1+s5, s2+s6, s3+s7]
  __m128 q = _mm_add_ps(_mm256_castps256_ps128(acc), _mm256_extractf128_ps(acc, 1));
  // [(s0+s4)+(s2+s6), (s1+s5)+(s3+s7), ...]
  q = _mm_add_ps(q, _mm_movehl_ps(q, q));
  float total = _mm_cvtss_f32(_mm_add_ss(q, _mm_shuffle_ps(q, q, 1)));
  for (; i < n; ++i) {
    const float p = x[i] * y[i];
    total = total + p;
  }
  return total;
}

void axpy_f32(float a, const float* x, float* y, std::size_t n) {
  const __m256 va = _mm256_set1_ps(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_ps(y + i, _mm256_add_ps(_mm256_loadu_ps(y + i), _mm256_mul_ps(va, _mm256_loadu_ps(x + i))));
  }
  for (; i < n; ++i) {
    const float p = a * x[i];
    y[i] = y[i] + p;
  }
}

void scale_f32(float a, float* x, std::size_t n) {
  const __m256 va = _mm256_set1_ps(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) _mm256_storeu_ps(x + i, _mm256_mul_ps(_mm256_loadu_ps(x + i), va));
  for (; i < n; ++i) x[i] = x[i] * a;
}

double sparse_dot_f64(const std::uint32_t* index, const double* value, std::size_t nnz, const double* dense) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= nnz; k += 4) {
    const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(index + k));
    const __m256d g = _mm256_i32gather_pd(dense, idx, 8);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(value + k), g));
  }
  // [s0+s2, s1+s3]
  const __m128d h = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
  double total = _mm_cvtsd_f64(_mm_add_sd(h, _mm_unpackhi_pd(h, h)));
  for (; k < nnz; ++k) {
    const double p = value[k] * dense[index[k]];
    total = total + p;
  }
  return total;
}

void sparse_axpy_f64(double a, const std::uint32_t* index, const double* value, std::size_t nnz, double* dense) {
  const __m256d va = _mm256_set1_pd(a);
  alignas(32) double prod[4];
  std::size_t k = 0;
  for (; k + 4 <= nnz; k += 4) {
    _mm256_store_pd(prod, _mm256_mul_pd(va, _mm256_loadu_pd(value + k)));
    for (std::size_t l = 0; l < 4; ++l) dense[index[k + l]] = dense[index[k + l]] + prod[l];
  }
  for (; k < nnz; ++k) {
    const double p = a * value[k];
    dense[index[k]] = dense[index[k]] + p;
  }
}

constexpr KernelTable kAvx2{"avx2", dot_f32, axpy_f32, scale_f32, sparse_dot_f64, sparse_axpy_f64};

}  // namespace

const KernelTable* avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &kAvx2 : nullptr;
}

}  // namespace hatelab::simd
