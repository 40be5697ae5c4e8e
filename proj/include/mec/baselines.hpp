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

// Heuristic baselines without approximation guarantees. Greedy follows the
// resource-efficiency rule directly; Iterative and Game are deterministic
// reconstructions of the alternating-subproblem and best-response schemes
// (see README for the exact rules).

#ifndef MEC_BASELINES_HPP_
#define MEC_BASELINES_HPP_

#include <vector>

#include "mec/enumerate.hpp"
#include "mec/kernels.hpp"
#include "mec/model.hpp"

namespace mec {

inline constexpr int kDefaultIterativeMaxIters = 20;

// Instances in descending u / (b~ * c~) order; ties by larger utility, then
// smaller id.
std::vector<InstanceId> greedy_order(const InstancePool& pool,
                                     const kernels::KernelTable* kernels = nullptr);
Solution greedy(const InstancePool& pool, const Problem& problem);

struct IterativeResult {
  Solution solution;
  // Utility held after each completed round; non-decreasing.
  std::vector<double> round_utility;
};

IterativeResult iterative_traced(const InstancePool& pool, const Problem& problem,
                                 int max_iters = kDefaultIterativeMaxIters);
Solution iterative(const InstancePool& pool, const Problem& problem,
                   int max_iters = kDefaultIterativeMaxIters);

struct GameResult {
  Solution solution;
  // Total utility after each applied move; strictly increasing.
  std::vector<double> round_utility;
  bool converged = false;  // no improving move was left
};

// max_rounds <= 0 selects the default of 10 * number of jobs.
GameResult game_traced(const InstancePool& pool, const Problem& problem, int max_rounds = 0);
Solution game(const InstancePool& pool, const Problem& problem, int max_rounds = 0);

}  // namespace mec

#endif  // MEC_BASELINES_HPP_
