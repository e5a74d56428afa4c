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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace hatelab::simd {

// Numeric inner loops of the trainers. Every variant accumulates in the same
// lane layout as the scalar reference and never fuses multiply-add, so all
// variants return bit-identical results.
//
// dot_f32: 8 partial sums (lane i takes elements i mod 8 of each full block),
// reduced as ((s0+s4)+(s2+s6)) + ((s1+s5)+(s3+s7)), then the tail in order.
// sparse_dot_f64: 4 partial sums reduced as (s0+s2)+(s1+s3), then the tail.
struct KernelTable {
  std::string_view name;
  float (*dot_f32)(const float* x, const float* y, std::size_t n);
  void (*axpy_f32)(float a, const float* x, float* y, std::size_t n);  // y += a * x
  void (*scale_f32)(float a, float* x, std::size_t n);
  double (*sparse_dot_f64)(const std::uint32_t* index, const double* value, std::size_t nnz, const double* dense);
  void (*sparse_axpy_f64)(double a, const std::uint32_t* index, const double* value, std::size_t nnz,
                          double* dense);  // dense[index[k]] += a * value[k]
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// Best available variant, chosen once. HATELAB_SIMD=scalar forces the
// reference.
const KernelTable& kernels();

}  // namespace hatelab::simd
