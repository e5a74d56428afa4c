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

#include "hatelab/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace hatelab::simd {

namespace {

float dot_f32(const float* x, const float* y, std::size_t n) {
  float s[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    for (std::size_t l = 0; l < 8; ++l) {
      const float p = x[i + l] * y[i + l];
      s[l] = s[l] + p;
    }
  }
  float total = ((s[0] + s[4]) + (s[2] + s[6])) + ((s[1] + s[5]) + (s[3] + s[7]));
  for (; i < n; ++i) {
    const float p = x[i] * y[i];
    total = total + p;
  }
  return total;
}

void axpy_f32(float a, const float* x, float* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const float p = a * x[i];
    y[i] = y[i] + p;
  }
}

void scale_f32(float a, float* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = x[i] * a;
}

double sparse_dot_f64(const std::uint32_t* index, const double* value, std::size_t nnz, const double* dense) {
  double s[4] = {0, 0, 0, 0};
  std::size_t k = 0;
  for (; k + 4 <= nnz; k += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const double p = value[k + l] * dense[index[k + l]];
      s[l] = s[l] + p;
    }
  }
  double total = (s[0] + s[2]) + (s[1] + s[3]);
  for (; k < nnz; ++k) {
    const double p = value[k] * dense[index[k]];
    total = total + p;
  }
  return total;
}

void sparse_axpy_f64(double a, const std::uint32_t* index, const double* value, std::size_t nnz, double* dense) {
  for (std::size_t k = 0; k < nnz; ++k) {
    const double p = a * value[k];
    dense[index[k]] = dense[index[k]] + p;
  }
}

constexpr KernelTable kScalar{"scalar", dot_f32, axpy_f32, scale_f32, sparse_dot_f64, sparse_axpy_f64};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

#if !defined(HATELAB_HAVE_AVX2)
const KernelTable* avx2_kernels() { return nullptr; }
#endif
#if !defined(HATELAB_HAVE_NEON)
const KernelTable* neon_kernels() { return nullptr; }
#endif

const KernelTable& kernels() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("HATELAB_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return &kScalar;
    if (const auto* k = avx2_kernels()) return k;
    if (const auto* k = neon_kernels()) return k;
    return &kScalar;
  }();
  return *chosen;
}

}  // namespace hatelab::simd
