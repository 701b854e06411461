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

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "ugsopt/kernels.hpp"
#include "ugsopt/rng.hpp"

using namespace ugsopt;
namespace k = ugsopt::kernels;

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-50.0, 50.0);
  return v;
}

std::vector<const k::KernelTable*> simd_tables() {
  std::vector<const k::KernelTable*> out;
  if (const k::KernelTable* t = k::avx2_kernels()) out.push_back(t);
  if (const k::KernelTable* t = k::neon_kernels()) out.push_back(t);
  return out;
}

// Lengths that exercise the unrolled body, the 4-wide step and the tail.
const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 64, 67, 1000};

}  // namespace

TEST_CASE("kernels: scalar reference values") {
  const k::KernelTable& s = k::scalar_kernels();
  std::vector<double> y = {1.0, 2.0, 3.0};
  const std::vector<double> x = {4.0, 5.0, 6.0};
  s.axpy(y.data(), 2.0, x.data(), 3);
  CHECK(y == std::vector<double>{9.0, 12.0, 15.0});
  s.scale(y.data(), 0.5, 3);
  CHECK(y == std::vector<double>{4.5, 6.0, 7.5});
  CHECK(s.dot(x.data(), x.data(), 3) == 77.0);
  const std::vector<double> xs = {0.0, 3.0};
  const std::vector<double> ys = {0.0, 4.0};
  std::vector<double> out(2);
  s.sq_dist_2d(xs.data(), ys.data(), 2, 0.0, 0.0, out.data());
  CHECK(out == std::vector<double>{0.0, 25.0});
}

TEST_CASE("kernels: SIMD variants match the scalar reference") {
  const auto tables = simd_tables();
  if (tables.empty()) {
    MESSAGE("no SIMD kernels on this machine; scalar path only");
    return;
  }
  Rng rng(99);
  const k::KernelTable& ref = k::scalar_kernels();
  for (const k::KernelTable* t : tables) {
    CAPTURE(k::isa_name(t->isa));
    for (std::size_t n : kLengths) {
      CAPTURE(n);
      const auto x = random_vector(rng, n);
      const auto y0 = random_vector(rng, n);
      const double a = rng.uniform(-3.0, 3.0);

      auto y_ref = y0;
      auto y_simd = y0;
      ref.axpy(y_ref.data(), a, x.data(), n);
      t->axpy(y_simd.data(), a, x.data(), n);
      CHECK(std::memcmp(y_ref.data(), y_simd.data(), n * sizeof(double)) == 0);

      y_ref = y0;
      y_simd = y0;
      ref.scale(y_ref.data(), a, n);
      t->scale(y_simd.data(), a, n);
      CHECK(std::memcmp(y_ref.data(), y_simd.data(), n * sizeof(double)) == 0);

      // Summation order differs, so only a rounding-level bound holds.
      double abs_sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) abs_sum += std::abs(x[i] * y0[i]);
      const double d_ref = ref.dot(x.data(), y0.data(), n);
      const double d_simd = t->dot(x.data(), y0.data(), n);
      CHECK(std::abs(d_ref - d_simd) <= 1e-13 * abs_sum + 1e-300);

      std::vector<double> o_ref(n);
      std::vector<double> o_simd(n);
      ref.sq_dist_2d(x.data(), y0.data(), n, 1.5, -2.25, o_ref.data());
      t->sq_dist_2d(x.data(), y0.data(), n, 1.5, -2.25, o_simd.data());
      CHECK(std::memcmp(o_ref.data(), o_simd.data(), n * sizeof(double)) == 0);
    }
  }
}

TEST_CASE("kernels: SIMD variants leave memory past n untouched") {
  for (const k::KernelTable* t : simd_tables()) {
    std::vector<double> y(12, 1.0);
    const std::vector<double> x(12, 2.0);
    t->axpy(y.data(), 1.0, x.data(), 5);
    CHECK(y[4] == 3.0);
    CHECK(y[5] == 1.0);
    CHECK(y[11] == 1.0);
  }
}

TEST_CASE("kernels: runtime dispatch honours the override") {
  const char* forced = std::getenv("UGSOPT_SIMD");
  const k::KernelTable& active = k::active();
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) {
    CHECK(active.isa == k::Isa::kScalar);
  } else if (k::avx2_kernels() != nullptr) {
    CHECK(active.isa == k::Isa::kAvx2);
  } else if (k::neon_kernels() != nullptr) {
    CHECK(active.isa == k::Isa::kNeon);
  } else {
    CHECK(active.isa == k::Isa::kScalar);
  }
  MESSAGE(k::isa_name(active.isa));
}
