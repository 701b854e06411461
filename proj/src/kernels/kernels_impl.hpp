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

#ifndef UGSOPT_SRC_KERNELS_IMPL_HPP_
#define UGSOPT_SRC_KERNELS_IMPL_HPP_

#include <cstddef>

namespace ugsopt::kernels::detail {

void axpy_scalar(double* y, double a, const double* x, std::size_t n) noexcept;
void scale_scalar(double* y, double a, std::size_t n) noexcept;
double dot_scalar(const double* a, const double* b, std::size_t n) noexcept;
void sq_dist_2d_scalar(const double* xs, const double* ys, std::size_t n, double cx,
                       double cy, double* out) noexcept;

#if defined(UGSOPT_HAVE_AVX2)
void axpy_avx2(double* y, double a, const double* x, std::size_t n) noexcept;
void scale_avx2(double* y, double a, std::size_t n) noexcept;
double dot_avx2(const double* a, const double* b, std::size_t n) noexcept;
void sq_dist_2d_avx2(const double* xs, const double* ys, std::size_t n, double cx,
                     double cy, double* out) noexcept;
#endif

#if defined(UGSOPT_HAVE_NEON)
void axpy_neon(double* y, double a, const double* x, std::size_t n) noexcept;
void scale_neon(double* y, double a, std::size_t n) noexcept;
double dot_neon(const double* a, const double* b, std::size_t n) noexcept;
void sq_dist_2d_neon(const double* xs, const double* ys, std::size_t n, double cx,
                     double cy, double* out) noexcept;
#endif

}  // namespace ugsopt::kernels::detail

#endif  // UGSOPT_SRC_KERNELS_IMPL_HPP_
