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

#include <arm_neon.h>

#include "hatelab/simd/kernels.hpp"

namespace hatelab::simd {

namespace {

float dot_f32(const float* x, const float* y, std::size_t n) {
  float32x4_t lo = vdupq_n_f32(0.0f);  // lanes 0-3
  float32x4_t hi = vdupq_n_f32(0.0f);  // lanes 4-7
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    lo = vaddq_f32(lo, vmulq_f32(vld1q_f32(x + i), vld1q_f32(y + i)));
    hi = vaddq_f32(hi, vmulq_f32(vld1q_f32(x + i + 4), vld1q_f32(y + i + 4)));
  }
  const float32x4_t q = vaddq_f32(lo, hi);  // [s0+s4, s1+s5, s2+s6, s3+s7]
  const float32x2_t h = vadd_f32(vget_low_f32(q), vget_high_f32(q));
  float total = vget_lane_f32(h, 0) + vget_lane_f32(h, 1);
  for (; i < n; ++i) {
    const float p = x[i] * y[i];
    total = total + p;
  }
  return total;
}

void axpy_f32(float a, const float* x, float* y, std::size_t n) {
  const float32x4_t va = vdupq_n_f32(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) vst1q_f32(y + i, vaddq_f32(vld1q_f32(y + i), vmulq_f32(va, vld1q_f32(x + i))));
  for (; i < n; ++i) {
    const float p = a * x[i];
    y[i] = y[i] + p;
  }
}

void scale_f32(float a, float* x, std::size_t n) {
  const float32x4_t va = vdupq_n_f32(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) vst1q_f32(x + i, vmulq_f32(vld1q_f32(x + i), va));
  for (; i < n; ++i) x[i] = x[i] * a;
}

double sparse_dot_f64(const std::uint32_t* index, const double* value, std::size_t nnz, const double* dense) {
  float64x2_t lo = vdupq_n_f64(0.0);  // lanes 0-1
  float64x2_t hi = vdupq_n_f64(0.0);  // lanes 2-3
  std::size_t k = 0;
  for (; k + 4 <= nnz; k += 4) {
    const double g[4] = {dense[index[k]], dense[index[k + 1]], dense[index[k + 2]], dense[index[k + 3]]};
    lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(value + k), vld1q_f64(g)));
    hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(value + k + 2), vld1q_f64(g + 2)));
  }
  const float64x2_t h = vaddq_f64(lo, hi);  // [s0+s2, s1+s3]
  double total = vgetq_lane_f64(h, 0) + vgetq_lane_f64(h, 1);
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

constexpr KernelTable kNeon{"neon", dot_f32, axpy_f32, scale_f32, sparse_dot_f64, sparse_axpy_f64};

}  // namespace

const KernelTable* neon_kernels() { return &kNeon; }

}  // namespace hatelab::simd
