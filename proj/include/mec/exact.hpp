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

// Exact solvers for the 0-1 selection problem over an instance pool:
// a depth-first branch-and-bound and a brute-force subset enumerator used
// as its oracle. Also an LP-format exporter for external ILP solvers.

#ifndef MEC_EXACT_HPP_
#define MEC_EXACT_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>

#include "mec/enumerate.hpp"
#include "mec/model.hpp"

namespace mec {

// A search node whose bound was evaluated: `selected` is fixed, every job
// in `remaining_jobs` (dense indices) is still open, and no completion of
// the node is worth more than current_utility + bound.
struct BnBNode {
  std::span<const InstanceId> selected;
  std::span<const int> remaining_jobs;
  double current_utility = 0.0;
  double bound = 0.0;
};

struct BnBConfig {
  double timeout = 600.0;  // seconds; <= 0 disables the clock
  std::optional<std::uint64_t> node_limit;
  std::function<void(const BnBNode&)> node_observer;  // testing aid
};

enum class ExactStatus { kOptimal, kTimeoutIncumbent };

std::string_view to_string(ExactStatus status);

struct ExactResult {
  Solution solution;
  ExactStatus status = ExactStatus::kOptimal;
  std::uint64_t nodes = 0;
};

// Branches over jobs in descending max-utility order; each node picks one
// (undominated) instance of the job or skips it. The incumbent starts from
// the greedy solution. A node is pruned when
//   current + min(sum of remaining jobs' best fitting utility,
//                 Lagrangian bound on the residual capacities)
// cannot beat the incumbent. The capacity prices of the Lagrangian bound
// are fitted once at the root by projected subgradient descent.
ExactResult exact_opt(const InstancePool& pool, const Problem& problem, const BnBConfig& cfg = {});

inline constexpr std::size_t kExhaustiveMaxPool = 25;

// Examines every subset of the pool; throws std::length_error when the pool
// has more than kExhaustiveMaxPool instances.
Solution exhaustive_opt(const InstancePool& pool, const Problem& problem);

// CPLEX LP text: one objective line, one constraint per line
// (bu_<server>, cu_<server>, job_<job>), binaries x<instance id>.
void write_lp(std::ostream& out, const InstancePool& pool, const Problem& problem);

}  // namespace mec

#endif  // MEC_EXACT_HPP_
