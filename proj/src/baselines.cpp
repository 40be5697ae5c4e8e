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

#include "mec/baselines.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace mec {

namespace {

constexpr double kImproveEps = 1e-12;

double footprint(const AssignmentInstance& inst) { return inst.norm_bu + inst.norm_cu; }

// Preferred candidate among equal utility: smaller footprint, then id.
bool lighter(const AssignmentInstance& a, const AssignmentInstance& b) {
  if (footprint(a) != footprint(b)) return footprint(a) < footprint(b);
  return a.instance_id < b.instance_id;
}

// The instance of a job on a server with the given allocation, if any.
class AllocationGrid {
 public:
  explicit AllocationGrid(const InstancePool& pool) {
    for (const auto& inst : pool.all()) {
      auto [it, inserted] = cells_.try_emplace(key(inst.job_index, inst.server_index));
      if (inserted)
        it->second.assign(static_cast<std::size_t>(inst.server_bu) * inst.server_cu, -1);
      it->second[static_cast<std::size_t>(inst.bu_alloc - 1) * inst.server_cu + inst.cu_alloc - 1] =
          inst.instance_id;
    }
  }

  InstanceId find(int job, int server, int bu, int cu, int server_bu, int server_cu) const {
    if (bu < 1 || cu < 1 || bu > server_bu || cu > server_cu) return -1;
    auto it = cells_.find(key(job, server));
    if (it == cells_.end()) return -1;
    return it->second[static_cast<std::size_t>(bu - 1) * server_cu + cu - 1];
  }

 private:
  static std::uint64_t key(int job, int server) {
    return (static_cast<std::uint64_t>(job) << 32) | static_cast<std::uint32_t>(server);
  }
  std::unordered_map<std::uint64_t, std::vector<InstanceId>> cells_;
};

// Per-server allocation phase: unit increments of b or c for the jobs on
// one server, best utility gain first, until no increment helps.
void increment_allocations(std::vector<InstanceId>& chosen, int server, const InstancePool& pool,
                           const AllocationGrid& grid, int bu_cap, int cu_cap) {
  int bu_used = 0;
  int cu_used = 0;
  for (InstanceId id : chosen) {
    bu_used += pool[id].bu_alloc;
    cu_used += pool[id].cu_alloc;
  }
  for (;;) {
    std::size_t best_slot = 0;
    InstanceId best = -1;
    double best_gain = kImproveEps;
    for (std::size_t s = 0; s < chosen.size(); ++s) {
      const AssignmentInstance& cur = pool[chosen[s]];
      const std::pair<int, int> steps[] = {{cur.bu_alloc + 1, cur.cu_alloc},
                                           {cur.bu_alloc, cur.cu_alloc + 1}};
      for (auto [b, c] : steps) {
        const InstanceId next = grid.find(cur.job_index, server, b, c, cur.server_bu, cur.server_cu);
        if (next < 0) continue;
        const AssignmentInstance& cand = pool[next];
        if (bu_used - cur.bu_alloc + cand.bu_alloc > bu_cap) continue;
        if (cu_used - cur.cu_alloc + cand.cu_alloc > cu_cap) continue;
        const double gain = cand.utility - cur.utility;
        if (gain > best_gain || (best >= 0 && gain == best_gain && lighter(cand, pool[best]))) {
          best_gain = gain;
          best = next;
          best_slot = s;
        }
      }
    }
    if (best < 0) return;
    const AssignmentInstance& old = pool[chosen[best_slot]];
    bu_used += pool[best].bu_alloc - old.bu_alloc;
    cu_used += pool[best].cu_alloc - old.cu_alloc;
    chosen[best_slot] = best;
  }
}

double utility_of(const std::vector<InstanceId>& ids, const InstancePool& pool) {
  double total = 0.0;
  for (InstanceId id : ids) total += pool[id].utility;
  return total;
}

}  // namespace

std::vector<InstanceId> greedy_order(const InstancePool& pool,
                                     const kernels::KernelTable* kernels) {
  const kernels::KernelTable& k = kernels != nullptr ? *kernels : kernels::active_kernels();
  const std::size_t n = pool.size();
  std::vector<double> utility(n), norm_bu(n), norm_cu(n), efficiency(n);
  for (std::size_t i = 0; i < n; ++i) {
    utility[i] = pool[i].utility;
    norm_bu[i] = pool[i].norm_bu;
    norm_cu[i] = pool[i].norm_cu;
  }
  k.resource_efficiency(utility, norm_bu, norm_cu, efficiency);
  std::vector<InstanceId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](InstanceId a, InstanceId b) {
    if (efficiency[a] != efficiency[b]) return efficiency[a] > efficiency[b];
    if (utility[a] != utility[b]) return utility[a] > utility[b];
    return a < b;
  });
  return order;
}

Solution greedy(const InstancePool& pool, const Problem& problem) {
  Solution solution(problem);
  for (InstanceId id : greedy_order(pool)) {
    if (check_add_feasible(solution, pool[id], problem)) solution.add(pool[id]);
  }
  return solution;
}

IterativeResult iterative_traced(const InstancePool& pool, const Problem& problem, int max_iters) {
  if (max_iters < 1) throw std::invalid_argument("iterative: max_iters must be >= 1");
  const int n_jobs = problem.num_jobs();
  const AllocationGrid grid(pool);

  // Preferred (b, c) per job; starts at each job's smallest-footprint
  // instance (ties: larger utility, then smaller id).
  std::vector<std::pair<int, int>> pref(n_jobs, {0, 0});
  for (int j = 0; j < n_jobs; ++j) {
    InstanceId best = -1;
    for (InstanceId id : pool.job_instances(j)) {
      const auto& inst = pool[id];
      if (best < 0 || footprint(inst) < footprint(pool[best]) ||
          (footprint(inst) == footprint(pool[best]) && inst.utility > pool[best].utility))
        best = id;
    }
    if (best >= 0) pref[j] = {pool[best].bu_alloc, pool[best].cu_alloc};
  }

  IterativeResult result{Solution(problem), {}};
  double held = 0.0;
  for (int round = 0; round < max_iters; ++round) {
    // (a) Offloading with allocations fixed: jobs by descending best
    // candidate utility pick the best fitting (server, ring).
    std::vector<std::vector<InstanceId>> candidates(n_jobs);
    std::vector<double> best_u(n_jobs, 0.0);
    for (int j = 0; j < n_jobs; ++j) {
      for (InstanceId id : pool.job_instances(j)) {
        const auto& inst = pool[id];
        if (inst.bu_alloc != pref[j].first || inst.cu_alloc != pref[j].second) continue;
        candidates[j].push_back(id);
        best_u[j] = std::max(best_u[j], inst.utility);
      }
      std::sort(candidates[j].begin(), candidates[j].end(), [&](InstanceId a, InstanceId b) {
        if (pool[a].utility != pool[b].utility) return pool[a].utility > pool[b].utility;
        return lighter(pool[a], pool[b]);
      });
    }
    std::vector<int> job_order(n_jobs);
    std::iota(job_order.begin(), job_order.end(), 0);
    std::stable_sort(job_order.begin(), job_order.end(),
                     [&](int a, int b) { return best_u[a] > best_u[b]; });
    Solution offload(problem);
    for (int j : job_order) {
      for (InstanceId id : candidates[j]) {
        if (offload.can_add(pool[id])) {
          offload.add(pool[id]);
          break;
        }
      }
    }

    // (b) Allocation with assignments fixed, per server.
    std::vector<std::vector<InstanceId>> on_server(problem.num_servers());
    for (InstanceId id : offload.selected()) on_server[pool[id].server_index].push_back(id);
    Solution round_solution(problem);
    for (int k = 0; k < problem.num_servers(); ++k) {
      std::vector<InstanceId> kept = on_server[k];
      if (kept.empty()) continue;
      const int bu_cap = problem.servers()[k].bandwidth_units;
      const int cu_cap = problem.servers()[k].computing_units;
      increment_allocations(kept, k, pool, grid, bu_cap, cu_cap);

      std::vector<InstanceId> rebuilt;
      int bu = 0;
      int cu = 0;
      for (InstanceId id : on_server[k]) {
        const auto& inst = pool[id];
        InstanceId minimal = -1;
        for (InstanceId other : pool.job_instances(inst.job_index)) {
          const auto& o = pool[other];
          if (o.server_index != k) continue;
          if (minimal < 0 || footprint(o) < footprint(pool[minimal]) ||
              (footprint(o) == footprint(pool[minimal]) && o.utility > pool[minimal].utility))
            minimal = other;
        }
        rebuilt.push_back(minimal);
        bu += pool[minimal].bu_alloc;
        cu += pool[minimal].cu_alloc;
      }
      if (bu <= bu_cap && cu <= cu_cap) {
        increment_allocations(rebuilt, k, pool, grid, bu_cap, cu_cap);
        if (utility_of(rebuilt, pool) > utility_of(kept, pool) + kImproveEps) kept = rebuilt;
      }
      for (InstanceId id : kept) round_solution.add(pool[id]);
    }

    const bool improved = round_solution.total_utility() > held + kImproveEps;
    if (improved) {
      held = round_solution.total_utility();
      for (InstanceId id : round_solution.selected())
        pref[pool[id].job_index] = {pool[id].bu_alloc, pool[id].cu_alloc};
      result.solution = std::move(round_solution);
    }
    result.round_utility.push_back(held);
    if (!improved) break;
  }
  return result;
}

Solution iterative(const InstancePool& pool, const Problem& problem, int max_iters) {
  return iterative_traced(pool, problem, max_iters).solution;
}

GameResult game_traced(const InstancePool& pool, const Problem& problem, int max_rounds) {
  if (max_rounds <= 0) max_rounds = std::max(1, 10 * problem.num_jobs());
  const int n_jobs = problem.num_jobs();

  // Each job's instances by descending utility so a scan can stop as soon
  // as no remaining alternative beats the current choice.
  std::vector<std::vector<InstanceId>> by_utility(n_jobs);
  for (int j = 0; j < n_jobs; ++j) {
    auto ids = pool.job_instances(j);
    by_utility[j].assign(ids.begin(), ids.end());
    std::sort(by_utility[j].begin(), by_utility[j].end(), [&](InstanceId a, InstanceId b) {
      if (pool[a].utility != pool[b].utility) return pool[a].utility > pool[b].utility;
      return lighter(pool[a], pool[b]);
    });
  }

  GameResult result{Solution(problem), {}, false};
  Solution& s = result.solution;
  for (int round = 0; round < max_rounds; ++round) {
    InstanceId best = -1;
    double best_gain = kImproveEps;
    for (int j = 0; j < n_jobs; ++j) {
      const InstanceId cur_id = s.selected_for_job(j);
      const double cur_u = cur_id >= 0 ? pool[cur_id].utility : 0.0;
      for (InstanceId id : by_utility[j]) {
        const AssignmentInstance& cand = pool[id];
        const double gain = cand.utility - cur_u;
        if (gain < best_gain) break;
        if (id == cur_id) continue;
        int bu = s.bu_used(cand.server_index) + cand.bu_alloc;
        int cu = s.cu_used(cand.server_index) + cand.cu_alloc;
        if (cur_id >= 0 && pool[cur_id].server_index == cand.server_index) {
          bu -= pool[cur_id].bu_alloc;
          cu -= pool[cur_id].cu_alloc;
        }
        if (bu > s.bu_capacity(cand.server_index) || cu > s.cu_capacity(cand.server_index)) continue;
        if (gain > best_gain || best < 0 || lighter(cand, pool[best])) {
          best_gain = gain;
          best = id;
        }
        break;  // later candidates of this job have no larger gain
      }
    }
    if (best < 0) {
      result.converged = true;
      break;
    }
    const AssignmentInstance& move = pool[best];
    const InstanceId cur_id = s.selected_for_job(move.job_index);
    if (cur_id >= 0) s.remove(pool[cur_id]);
    s.add(move);
    result.round_utility.push_back(s.total_utility());
  }
  return result;
}

Solution game(const InstancePool& pool, const Problem& problem, int max_rounds) {
  return game_traced(pool, problem, max_rounds).solution;
}

}  // namespace mec
