// Copyright 2026 The ugsopt Authors
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

#ifndef UGSOPT_KERNELS_HPP_
#define UGSOPT_KERNELS_HPP_

#include <cstddef>
#include <span>

// Data-parallel inner loops shared by the simplex tableau and k-means.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 (x86-64) or NEON (aarch64) variant. The variant is
// picked once at runtime from CPU capabilities; setting UGSOPT_SIMD=scalar in
// the environment forces the reference path.
//
// axpy, scale and sq_dist_2d are lane-wise and never fuse multiply-add, so all
// variants agree bit for bit. dot reassociates the sum and agrees only up to
// rounding.

namespace ugsopt::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

struct KernelTable {
  Isa isa;
  // y[i] += a * x[i]
  void (*axpy)(double* y, double a, const double* x, std::size_t n) noexcept;
  // y[i] *= a
  void (*scale)(double* y, double a, std::size_t n) noexcept;
  double (*dot)(const double* a, const double* b, std::size_t n) noexcept;
  // out[i] = (xs[i] - cx)^2 + (ys[i] - cy)^2
  void (*sq_dist_2d)(const double* xs, const double* ys, std::size_t n, double cx,
                     double cy, double* out) noexcept;
};

const KernelTable& scalar_kernels();
// nullptr when the variant is not compiled in or the CPU lacks the feature.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

// The table selected for this process.
const KernelTable& active();

const char* isa_name(Isa isa);

inline void axpy(std::span<double> y, double a, std::span<const double> x) {
  active().axpy(y.data(), a, x.data(), y.size());
}
inline void scale(std::span<double> y, double a) { active().scale(y.data(), a, y.size()); }
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline void sq_dist_2d(std::span<const double> xs, std::span<const double> ys, double cx,
                       double cy, std::span<double> out) {
  active().sq_dist_2d(xs.data(), ys.data(), xs.size(), cx, cy, out.data());
}

}  // namespace ugsopt::kernels

#endif  // UGSOPT_KERNELS_HPP_
