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

// Data-parallel inner loops. Every kernel has a scalar reference version
// and, where the target supports it, a vector version; active_kernels()
// picks one at run time. Variants perform the same IEEE operations in the
// same order per element, so their results are bit-identical.
//
// MEC_SIMD=scalar|avx2 in the environment forces a variant.

#ifndef MEC_KERNELS_HPP_
#define MEC_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace mec::kernels {

// weight[i] -= pivot_weight * (job[i] == pivot_job ? 1 : coef[i]) for all i.
// Returns how many weights are <= drop_eps afterwards.
using DecomposeSweepFn = std::size_t (*)(std::span<double> weight,
                                         std::span<const std::int32_t> job,
                                         std::span<const double> coef,
                                         std::int32_t pivot_job, double pivot_weight,
                                         double drop_eps);

// out[i] = utility[i] / (norm_bu[i] * norm_cu[i]).
using ResourceEfficiencyFn = void (*)(std::span<const double> utility,
                                      std::span<const double> norm_bu,
                                      std::span<const double> norm_cu, std::span<double> out);

struct KernelTable {
  std::string_view name;
  DecomposeSweepFn decompose_sweep;
  ResourceEfficiencyFn resource_efficiency;
};

const KernelTable& scalar_kernels();
// Null when the build or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

// Every variant usable on this machine, scalar first.
std::vector<const KernelTable*> available_kernels();
const KernelTable& active_kernels();

namespace scalar {
std::size_t decompose_sweep(std::span<double> weight, std::span<const std::int32_t> job,
                            std::span<const double> coef, std::int32_t pivot_job,
                            double pivot_weight, double drop_eps);
void resource_efficiency(std::span<const double> utility, std::span<const double> norm_bu,
                         std::span<const double> norm_cu, std::span<double> out);
}  // namespace scalar

namespace avx2 {
std::size_t decompose_sweep(std::span<double> weight, std::span<const std::int32_t> job,
                            std::span<const double> coef, std::int32_t pivot_job,
                            double pivot_weight, double drop_eps);
void resource_efficiency(std::span<const double> utility, std::span<const double> norm_bu,
                         std::span<const double> norm_cu, std::span<double> out);
}  // namespace avx2

}  // namespace mec::kernels

#endif  // MEC_KERNELS_HPP_
