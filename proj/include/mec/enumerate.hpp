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

#ifndef MEC_ENUMERATE_HPP_
#define MEC_ENUMERATE_HPP_

#include <span>
#include <string>
#include <vector>

#include "mec/model.hpp"

namespace mec {

// The set of feasible assignment instances with per-job and per-server
// views. Instance ids equal positions in all(). Immutable once built.
class InstancePool {
 public:
  InstancePool() = default;
  // Renumbers instance ids to positions and builds the indices.
  InstancePool(const Problem& problem, std::vector<AssignmentInstance> instances);

  const std::vector<AssignmentInstance>& all() const { return all_; }
  const AssignmentInstance& operator[](InstanceId id) const { return all_[id]; }
  std::size_t size() const { return all_.size(); }
  bool empty() const { return all_.empty(); }

  int num_jobs() const { return static_cast<int>(by_job_.size()); }
  int num_servers() const { return static_cast<int>(by_server_.size()); }

  // Views by dense index.
  std::span<const InstanceId> job_instances(int job_index) const { return by_job_[job_index]; }
  std::span<const InstanceId> server_instances(int server_index) const {
    return by_server_[server_index];
  }

  bool is_light(InstanceId id) const { return all_[id].is_light(); }
  const std::vector<InstanceId>& light_set() const { return light_; }
  const std::vector<InstanceId>& heavy_set() const { return heavy_; }

 private:
  std::vector<AssignmentInstance> all_;
  std::vector<std::vector<InstanceId>> by_job_;
  std::vector<std::vector<InstanceId>> by_server_;
  std::vector<InstanceId> light_;
  std::vector<InstanceId> heavy_;
};

// All <ring, b, c> triples per job that meet min(gamma*D, dwell) and carry
// positive utility, ordered by (job, server, ring, b, c).
InstancePool enumerate_instances(const Problem& problem);

// Ids of instances not dominated by another instance of the same job on the
// same server (b' <= b, c' <= c, u' >= u, one of them strict).
std::vector<InstanceId> undominated_instances(const InstancePool& pool);

// Pool restricted to undominated_instances(); ids are renumbered. The
// optimal objective is unchanged.
InstancePool dominance_prune(const InstancePool& pool, const Problem& problem);

// Re-checks a solution from scratch against the pool and problem:
// one instance per job, server capacities, and the utility total.
// Returns one message per violation; empty when the solution is valid.
std::vector<std::string> validate_solution(const Solution& solution, const InstancePool& pool,
                                           const Problem& problem);

}  // namespace mec

#endif  // MEC_ENUMERATE_HPP_
