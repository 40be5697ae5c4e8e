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

// Built with -mavx2 only (no FMA), and called only after a CPUID check.

#include <immintrin.h>

#include <bit>
#include <cassert>

#include "mec/kernels.hpp"

namespace mec::kernels::avx2 {

std::size_t decompose_sweep(std::span<double> weight, std::span<const std::int32_t> job,
                            std::span<const double> coef, std::int32_t pivot_job,
                            double pivot_weight, double drop_eps) {
  assert(job.size() == weight.size() && coef.size() == weight.size());
  const std::size_t n = weight.size();
  const __m128i pj = _mm_set1_epi32(pivot_job);
  const __m256d pw = _mm256_set1_pd(pivot_weight);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d eps = _mm256_set1_pd(drop_eps);
  std::size_t dead = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i jobs = _mm_loadu_si128(reinterpret_cast<const __m128i*>(job.data() + i));
    // Widen the 32-bit equality mask to one 64-bit lane per double.
    const __m256d same_job = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(_mm_cmpeq_epi32(jobs, pj)));
    const __m256d factor = _mm256_blendv_pd(_mm256_loadu_pd(coef.data() + i), one, same_job);
    const __m256d w = _mm256_sub_pd(_mm256_loadu_pd(weight.data() + i), _mm256_mul_pd(pw, factor));
    _mm256_storeu_pd(weight.data() + i, w);
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(w, eps, _CMP_LE_OQ));
    dead += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(mask)));
  }
  for (; i < n; ++i) {
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
  const std::size_t n = utility.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d denom =
        _mm256_mul_pd(_mm256_loadu_pd(norm_bu.data() + i), _mm256_loadu_pd(norm_cu.data() + i));
    _mm256_storeu_pd(out.data() + i, _mm256_div_pd(_mm256_loadu_pd(utility.data() + i), denom));
  }
  for (; i < n; ++i) out[i] = utility[i] / (norm_bu[i] * norm_cu[i]);
}

}  // namespace mec::kernels::avx2
