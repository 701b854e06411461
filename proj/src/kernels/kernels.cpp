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

#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"
#include "ugsopt/kernels.hpp"

namespace ugsopt::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(UGSOPT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& select() {
  const char* forced = std::getenv("UGSOPT_SIMD");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) {
    return scalar_kernels();
  }
  if (const KernelTable* t = avx2_kernels()) return *t;
  if (const KernelTable* t = neon_kernels()) return *t;
  return scalar_kernels();
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::kScalar, detail::axpy_scalar, detail::scale_scalar,
                                 detail::dot_scalar, detail::sq_dist_2d_scalar};
  return table;
}

const KernelTable* avx2_kernels() {
#if defined(UGSOPT_HAVE_AVX2)
  static const KernelTable table{Isa::kAvx2, detail::axpy_avx2, detail::scale_avx2,
                                 detail::dot_avx2, detail::sq_dist_2d_avx2};
  static const bool supported = cpu_has_avx2();
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_kernels() {
#if defined(UGSOPT_HAVE_NEON)
  static const KernelTable table{Isa::kNeon, detail::axpy_neon, detail::scale_neon,
                                 detail::dot_neon, detail::sq_dist_2d_neon};
  return &table;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

}  // namespace ugsopt::kernels
