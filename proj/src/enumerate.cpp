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

#include "mec/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace mec {

InstancePool::InstancePool(const Problem& problem, std::vector<AssignmentInstance> instances)
    : all_(std::move(instances)),
      by_job_(problem.num_jobs()),
      by_server_(problem.num_servers()) {
  for (std::size_t i = 0; i < all_.size(); ++i) {
    AssignmentInstance& inst = all_[i];
    inst.instance_id = static_cast<InstanceId>(i);
    by_job_[inst.job_index].push_back(inst.instance_id);
    by_server_[inst.server_index].push_back(inst.instance_id);
    (inst.is_light() ? light_ : heavy_).push_back(inst.instance_id);
  }
}

InstancePool enumerate_instances(const Problem& problem) {
  std::vector<AssignmentInstance> out;
  for (int j = 0; j < problem.num_jobs(); ++j) {
    const Job& job = problem.jobs()[j];
    std::vector<RingAccess> rings = job.accessible_rings;
    std::sort(rings.begin(), rings.end(),
              [](const RingAccess& a, const RingAccess& b) { return a.server_id < b.server_id; });
    for (const RingAccess& access : rings) {
      const int k = problem.server_index(access.server_id);
      const EdgeServer& server = problem.servers()[k];
      const NetworkRing& ring = *server.find_ring(access.ring_index);
      const double limit = std::min(job.latest_completion(), access.dwell_time);
      std::vector<double> proc(server.computing_units);
      for (int c = 1; c <= server.computing_units; ++c)
        proc[c - 1] = job.processing_time(server.server_id, c);
      for (int b = 1; b <= server.bandwidth_units; ++b) {
        const double rate = compute_offload_rate(job, server, ring, b, problem.channel());
        const double t_off = compute_offload_time(job, rate);
        for (int c = 1; c <= server.computing_units; ++c) {
          const double t = t_off + proc[c - 1];
          if (!(t <= limit)) continue;
          const double u = compute_utility(job, t);
          if (!(u > 0)) continue;
          AssignmentInstance inst;
          inst.job_id = job.job_id;
          inst.server_id = server.server_id;
          inst.ring_index = ring.ring_index;
          inst.bu_alloc = b;
          inst.cu_alloc = c;
          inst.server_bu = server.bandwidth_units;
          inst.server_cu = server.computing_units;
          inst.offload_time = t_off;
          inst.processing_time = proc[c - 1];
          inst.completion_time = t;
          inst.utility = u;
          inst.norm_bu = static_cast<double>(b) / server.bandwidth_units;
          inst.norm_cu = static_cast<double>(c) / server.computing_units;
          inst.job_index = j;
          inst.server_index = k;
          out.push_back(inst);
        }
      }
    }
  }
  return InstancePool(problem, std::move(out));
}

std::vector<InstanceId> undominated_instances(const InstancePool& pool) {
  // A job has at most one ring per server, so (job, server, b, c) is unique
  // and domination reduces to a 2-D prefix maximum over the (b, c) grid:
  // x is dominated iff some other cell with b' <= b, c' <= c has u' >= u.
  constexpr double kMissing = -1.0;
  std::vector<InstanceId> kept;
  std::vector<double> grid;
  std::vector<double> prefix;
  for (int j = 0; j < pool.num_jobs(); ++j) {
    std::vector<InstanceId> ids(pool.job_instances(j).begin(), pool.job_instances(j).end());
    std::stable_sort(ids.begin(), ids.end(), [&](InstanceId a, InstanceId b) {
      return pool[a].server_index < pool[b].server_index;
    });
    std::size_t begin = 0;
    while (begin < ids.size()) {
      const int k = pool[ids[begin]].server_index;
      std::size_t end = begin;
      while (end < ids.size() && pool[ids[end]].server_index == k) ++end;
      const int nb = pool[ids[begin]].server_bu;
      const int nc = pool[ids[begin]].server_cu;
      grid.assign(static_cast<std::size_t>(nb + 1) * (nc + 1), kMissing);
      prefix.assign(grid.size(), kMissing);
      auto at = [nc](int b, int c) { return static_cast<std::size_t>(b) * (nc + 1) + c; };
      for (std::size_t i = begin; i < end; ++i)
        grid[at(pool[ids[i]].bu_alloc, pool[ids[i]].cu_alloc)] = pool[ids[i]].utility;
      for (int b = 1; b <= nb; ++b)
        for (int c = 1; c <= nc; ++c)
          prefix[at(b, c)] = std::max({grid[at(b, c)], prefix[at(b - 1, c)], prefix[at(b, c - 1)]});
      for (std::size_t i = begin; i < end; ++i) {
        const AssignmentInstance& x = pool[ids[i]];
        const double best_other =
            std::max(prefix[at(x.bu_alloc - 1, x.cu_alloc)], prefix[at(x.bu_alloc, x.cu_alloc - 1)]);
        if (best_other < x.utility) kept.push_back(ids[i]);
      }
      begin = end;
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

InstancePool dominance_prune(const InstancePool& pool, const Problem& problem) {
  std::vector<AssignmentInstance> kept;
  for (InstanceId id : undominated_instances(pool)) kept.push_back(pool[id]);
  return InstancePool(problem, std::move(kept));
}

std::vector<std::string> validate_solution(const Solution& solution, const InstancePool& pool,
                                           const Problem& problem) {
  std::vector<std::string> errors;
  std::vector<int> bu(problem.num_servers(), 0);
  std::vector<int> cu(problem.num_servers(), 0);
  std::set<JobId> jobs;
  std::set<InstanceId> seen;
  double total = 0.0;
  for (InstanceId id : solution.selected()) {
    if (id < 0 || static_cast<std::size_t>(id) >= pool.size()) {
      errors.push_back("selected id " + std::to_string(id) + " is not in the pool");
      continue;
    }
    if (!seen.insert(id).second) errors.push_back("instance " + std::to_string(id) + " selected twice");
    const AssignmentInstance& inst = pool[id];
    if (!jobs.insert(inst.job_id).second)
      errors.push_back("job " + std::to_string(inst.job_id) + " has more than one instance");
    const int k = problem.server_index(inst.server_id);
    bu[k] += inst.bu_alloc;
    cu[k] += inst.cu_alloc;
    total += inst.utility;
  }
  for (int k = 0; k < problem.num_servers(); ++k) {
    const EdgeServer& s = problem.servers()[k];
    if (bu[k] > s.bandwidth_units)
      errors.push_back("server " + std::to_string(s.server_id) + " uses " + std::to_string(bu[k]) +
                       " of " + std::to_string(s.bandwidth_units) + " bandwidth units");
    if (cu[k] > s.computing_units)
      errors.push_back("server " + std::to_string(s.server_id) + " uses " + std::to_string(cu[k]) +
                       " of " + std::to_string(s.computing_units) + " computing units");
  }
  if (std::abs(total - solution.total_utility()) > 1e-9 * std::max(1.0, std::abs(total)))
    errors.push_back("reported utility " + std::to_string(solution.total_utility()) +
                     " differs from recomputed " + std::to_string(total));
  return errors;
}

}  // namespace mec
