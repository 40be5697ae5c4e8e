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

#include <cassert>

#include "mec/kernels.hpp"

namespace mec::kernels::scalar {

std::size_t decompose_sweep(std::span<double> weight, std::span<const std::int32_t> job,
                            std::span<const double> coef, std::int32_t pivot_job,
                            double pivot_weight, double drop_eps) {
  assert(job.size() == weight.size() && coef.size() == weight.size());
  std::size_t dead = 0;
  for (std::size_t i = 0; i < weight.size(); ++i) {
    const double factor = job[i] == pivot_job ? 1.0 : coef[i];
    weight[i] = weight[i] - pivot_weight * factor;
    dead += weight[i] <= drop_eps;
  }
  return dead;
}

void resource_efficiency(std::span<const double> utility, std::span<const double> norm_bu,
                         std::span<const double> norm_cu, std::span<double> out) {
  assert(norm_bu.size() == utility.size() && norm_cu.size() == utility.size());
  assert(out.size() == utility.size());
  for (std::size_t i = 0; i < utility.size(); ++i) out[i] = utility[i] / (norm_bu[i] * norm_cu[i]);
}

}  // namespace mec::kernels::scalar
