// Copyright 2026 The MEC Offload Authors
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
#include <string_view>

#include "mec/kernels.hpp"

namespace mec::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(MEC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* select_active() {
  const KernelTable* avx2 = avx2_kernels();
  const char* forced = std::getenv("MEC_SIMD");
  if (forced != nullptr) {
    const std::string_view want(forced);
    if (want == "scalar") return &scalar_kernels();
    if (want == "avx2" && avx2 != nullptr) return avx2;
  }
  return avx2 != nullptr ? avx2 : &scalar_kernels();
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", &scalar::decompose_sweep, &scalar::resource_efficiency};
  return table;
}

const KernelTable* avx2_kernels() {
#if defined(MEC_HAVE_AVX2)
  static const KernelTable table{"avx2", &avx2::decompose_sweep, &avx2::resource_efficiency};
  static const bool usable = cpu_has_avx2();
  return usable ? &table : nullptr;
#else
  return nullptr;
#endif
}

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (const KernelTable* avx2 = avx2_kernels()) out.push_back(avx2);
  return out;
}

const KernelTable& active_kernels() {
  static const KernelTable* active = select_active();
  return *active;
}

}  // namespace mec::kernels
