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

#ifndef MEC_RANDFIXEDSUM_HPP_
#define MEC_RANDFIXEDSUM_HPP_

#include <random>
#include <vector>

namespace mec {

using Rng = std::mt19937_64;

// Stafford's Randfixedsum: n values drawn uniformly from the slice
// {x : sum(x) = total, lo <= x_i <= hi}. Throws std::domain_error when
// n < 1, lo > hi, or total lies outside [n*lo, n*hi].
std::vector<double> randfixedsum(int n, double total, double lo, double hi, Rng& rng);

}  // namespace mec

#endif  // MEC_RANDFIXEDSUM_HPP_
