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

#include "mec/exact.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mec/baselines.hpp"

namespace mec {

std::string_view to_string(ExactStatus status) {
  switch (status) {
    case ExactStatus::kOptimal:
      return "optimal";
    case ExactStatus::kTimeoutIncumbent:
      return "timeout_incumbent";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

class BranchAndBound {
 public:
  BranchAndBound(const InstancePool& pool, const Problem& problem, const BnBConfig& cfg)
      : pool_(pool),
        cfg_(cfg),
        start_(Clock::now()),
        bu_left_(problem.num_servers()),
        cu_left_(problem.num_servers()),
        bu_price_(problem.num_servers(), 0.0),
        cu_price_(problem.num_servers(), 0.0) {
    for (int k = 0; k < problem.num_servers(); ++k) {
      bu_left_[k] = problem.servers()[k].bandwidth_units;
      cu_left_[k] = problem.servers()[k].computing_units;
    }
    std::vector<std::vector<InstanceId>> per_job(problem.num_jobs());
    for (InstanceId id : undominated_instances(pool)) per_job[pool[id].job_index].push_back(id);
    std::vector<int> jobs;
    for (int j = 0; j < problem.num_jobs(); ++j)
      if (!per_job[j].empty()) jobs.push_back(j);
    auto max_utility = [&](int j) {
      double best = 0.0;
      for (InstanceId id : per_job[j]) best = std::max(best, pool[id].utility);
      return best;
    };
    std::stable_sort(jobs.begin(), jobs.end(),
                     [&](int a, int b) { return max_utility(a) > max_utility(b); });
    for (int j : jobs) candidates_.push_back(std::move(per_job[j]));
    job_at_.assign(jobs.begin(), jobs.end());
    chosen_.assign(candidates_.size(), -1);
  }

  // Starts the search from a known feasible selection.
  void seed_incumbent(const Solution& start) {
    std::vector<InstanceId> by_job(pool_.num_jobs(), -1);
    for (InstanceId id : start.selected()) by_job[pool_[id].job_index] = id;
    std::vector<InstanceId> seeded(candidates_.size(), -1);
    double value = 0.0;
    for (std::size_t pos = 0; pos < candidates_.size(); ++pos) {
      const InstanceId id = by_job[pool_[candidates_[pos].front()].job_index];
      if (id < 0) continue;
      seeded[pos] = id;
      value += pool_[id].utility;
    }
    if (value > best_value_) {
      best_value_ = value;
      best_ = std::move(seeded);
    }
  }

  ExactResult solve(const Problem& problem) {
    tune_prices();
    // Try instances with the largest priced profit first.
    for (auto& ids : candidates_) {
      std::sort(ids.begin(), ids.end(), [&](InstanceId a, InstanceId b) {
        const double pa = priced_profit(pool_[a]);
        const double pb = priced_profit(pool_[b]);
        if (pa != pb) return pa > pb;
        return a < b;
      });
    }
    search(0, 0.0);
    ExactResult result;
    result.solution = Solution(problem);
    for (InstanceId id : best_)
      if (id >= 0) result.solution.add(pool_[id]);
    result.status = aborted_ ? ExactStatus::kTimeoutIncumbent : ExactStatus::kOptimal;
    result.nodes = nodes_;
    return result;
  }

 private:
  bool fits(const AssignmentInstance& inst) const {
    return inst.bu_alloc <= bu_left_[inst.server_index] &&
           inst.cu_alloc <= cu_left_[inst.server_index];
  }

  double priced_profit(const AssignmentInstance& inst) const {
    return inst.utility - bu_price_[inst.server_index] * inst.bu_alloc -
           cu_price_[inst.server_index] * inst.cu_alloc;
  }

  // Lagrangian dual of the capacity rows: for prices p, q >= 0,
  //   sum_k (p_k * BU_k + q_k * CU_k) + sum_j max(0, max_i u_i - p b_i - q c_i)
  // bounds the optimum. Prices are set once at the root by subgradient
  // descent toward the incumbent value.
  void tune_prices() {
    const std::size_t m = bu_left_.size();
    // Start from half the average value per unit of capacity; from zero
    // the first steps are wasted on the kink where many jobs tie.
    double value = 0.0;
    double units = 0.0;
    for (const auto& ids : candidates_) {
      double best = 0.0;
      for (InstanceId id : ids) best = std::max(best, pool_[id].utility);
      value += best;
    }
    for (std::size_t k = 0; k < m; ++k) units += bu_left_[k] + cu_left_[k];
    std::vector<double> p(m, 0.5 * value / units), q(m, 0.5 * value / units), gp(m), gq(m);
    double best_dual = std::numeric_limits<double>::infinity();
    double step_scale = 1.0;
    int stale = 0;
    for (int iter = 0; iter < 1000; ++iter) {
      double dual = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        dual += p[k] * bu_left_[k] + q[k] * cu_left_[k];
        gp[k] = bu_left_[k];
        gq[k] = cu_left_[k];
      }
      for (const auto& ids : candidates_) {
        double best = 0.0;
        const AssignmentInstance* arg = nullptr;
        for (InstanceId id : ids) {
          const auto& inst = pool_[id];
          const double v = inst.utility - p[inst.server_index] * inst.bu_alloc -
                           q[inst.server_index] * inst.cu_alloc;
          if (v > best) {
            best = v;
            arg = &inst;
          }
        }
        dual += best;
        if (arg) {
          gp[arg->server_index] -= arg->bu_alloc;
          gq[arg->server_index] -= arg->cu_alloc;
        }
      }
      if (iter == 0 || dual < best_dual - 1e-12 * std::max(1.0, best_dual)) {
        best_dual = dual;
        bu_price_ = p;
        cu_price_ = q;
        stale = 0;
      } else if (++stale >= 20) {
        step_scale *= 0.5;
        stale = 0;
        if (step_scale < 1e-4) break;
      }
      const double gap = dual - best_value_;
      if (gap <= 1e-9 * std::max(1.0, best_value_)) break;
      double norm2 = 0.0;
      for (std::size_t k = 0; k < m; ++k) norm2 += gp[k] * gp[k] + gq[k] * gq[k];
      if (norm2 == 0.0) break;
      const double step = step_scale * gap / norm2;
      for (std::size_t k = 0; k < m; ++k) {
        p[k] = std::max(0.0, p[k] - step * gp[k]);
        q[k] = std::max(0.0, q[k] - step * gq[k]);
      }
    }
  }

  // min(sum of each remaining job's best fitting utility, priced dual
  // over the residual capacities).
  double remaining_bound(int depth) const {
    double fit_sum = 0.0;
    double dual = 0.0;
    for (std::size_t k = 0; k < bu_left_.size(); ++k)
      dual += bu_price_[k] * bu_left_[k] + cu_price_[k] * cu_left_[k];
    for (std::size_t pos = depth; pos < candidates_.size(); ++pos) {
      double best_u = 0.0;
      double best_priced = 0.0;
      for (InstanceId id : candidates_[pos]) {
        const auto& inst = pool_[id];
        if (!fits(inst)) continue;
        best_u = std::max(best_u, inst.utility);
        best_priced = std::max(best_priced, priced_profit(inst));
      }
      fit_sum += best_u;
      dual += best_priced;
    }
    return std::min(fit_sum, dual);
  }

  void report_node(int depth, double current, double bound) const {
    std::vector<InstanceId> selected;
    for (int pos = 0; pos < depth; ++pos)
      if (chosen_[pos] >= 0) selected.push_back(chosen_[pos]);
    const std::span<const int> remaining(job_at_.data() + depth, job_at_.size() - depth);
    cfg_.node_observer(BnBNode{selected, remaining, current, bound});
  }

  bool out_of_budget() {
    if (aborted_) return true;
    if (cfg_.node_limit && nodes_ >= *cfg_.node_limit) aborted_ = true;
    if (cfg_.timeout > 0 && (nodes_ & 1023) == 0) {
      const std::chrono::duration<double> elapsed = Clock::now() - start_;
      if (elapsed.count() >= cfg_.timeout) aborted_ = true;
    }
    return aborted_;
  }

  void search(int depth, double current) {
    ++nodes_;
    if (current > best_value_) {
      best_value_ = current;
      best_ = chosen_;
    }
    if (depth == static_cast<int>(candidates_.size()) || out_of_budget()) return;
    const double margin = 1e-9 * std::max(1.0, best_value_);
    const double bound = remaining_bound(depth);
    if (cfg_.node_observer) report_node(depth, current, bound);
    if (current + bound <= best_value_ + margin) return;

    for (InstanceId id : candidates_[depth]) {
      const AssignmentInstance& inst = pool_[id];
      if (!fits(inst)) continue;
      bu_left_[inst.server_index] -= inst.bu_alloc;
      cu_left_[inst.server_index] -= inst.cu_alloc;
      chosen_[depth] = id;
      search(depth + 1, current + inst.utility);
      chosen_[depth] = -1;
      bu_left_[inst.server_index] += inst.bu_alloc;
      cu_left_[inst.server_index] += inst.cu_alloc;
      if (aborted_) return;
    }
    search(depth + 1, current);
  }

  const InstancePool& pool_;
  BnBConfig cfg_;
  Clock::time_point start_;
  std::vector<int> bu_left_;
  std::vector<int> cu_left_;
  std::vector<double> bu_price_;
  std::vector<double> cu_price_;
  std::vector<std::vector<InstanceId>> candidates_;  // by branching position
  std::vector<int> job_at_;                          // job index per position
  std::vector<InstanceId> chosen_;
  std::vector<InstanceId> best_;
  double best_value_ = 0.0;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

ExactResult exact_opt(const InstancePool& pool, const Problem& problem, const BnBConfig& cfg) {
  BranchAndBound bnb(pool, problem, cfg);
  bnb.seed_incumbent(greedy(pool, problem));
  return bnb.solve(problem);
}

Solution exhaustive_opt(const InstancePool& pool, const Problem& problem) {
  if (pool.size() > kExhaustiveMaxPool)
    throw std::length_error("exhaustive_opt: pool of " + std::to_string(pool.size()) +
                            " instances exceeds the cap of " + std::to_string(kExhaustiveMaxPool));
  // Include/exclude recursion over instance ids. A selection that breaks a
  // constraint stays broken under any superset, so such prefixes are cut
  // without losing any feasible subset.
  Solution current(problem);
  Solution best(problem);
  auto visit = [&](auto&& self, std::size_t next) -> void {
    if (next == pool.size()) {
      if (current.total_utility() > best.total_utility()) best = current;
      return;
    }
    const AssignmentInstance& inst = pool[next];
    if (current.can_add(inst)) {
      current.add(inst);
      self(self, next + 1);
      current.remove(inst);
    }
    self(self, next + 1);
  };
  visit(visit, 0);
  return best;
}

void write_lp(std::ostream& out, const InstancePool& pool, const Problem& problem) {
  out << "\\ joint offloading and resource allocation: " << pool.size() << " instances, "
      << problem.num_jobs() << " jobs, " << problem.num_servers() << " servers\n";
  out << "Maximize\n obj:";
  if (pool.empty()) out << " 0 x_none";
  for (const auto& inst : pool.all()) {
    out << (inst.instance_id == 0 ? " " : " + ");
    out.precision(17);
    out << inst.utility << " x" << inst.instance_id;
  }
  out << "\nSubject To\n";
  auto row = [&](const std::string& name, std::span<const InstanceId> ids, auto coefficient,
                 int rhs) {
    if (ids.empty()) return;
    out << ' ' << name << ':';
    bool first = true;
    for (InstanceId id : ids) {
      out << (first ? " " : " + ") << coefficient(pool[id]) << " x" << id;
      first = false;
    }
    out << " <= " << rhs << '\n';
  };
  for (int k = 0; k < problem.num_servers(); ++k) {
    const EdgeServer& s = problem.servers()[k];
    row("bu_" + std::to_string(s.server_id), pool.server_instances(k),
        [](const AssignmentInstance& i) { return i.bu_alloc; }, s.bandwidth_units);
    row("cu_" + std::to_string(s.server_id), pool.server_instances(k),
        [](const AssignmentInstance& i) { return i.cu_alloc; }, s.computing_units);
  }
  for (int j = 0; j < problem.num_jobs(); ++j)
    row("job_" + std::to_string(problem.jobs()[j].job_id), pool.job_instances(j),
        [](const AssignmentInstance&) { return 1; }, 1);
  out << "Binary\n";
  for (const auto& inst : pool.all()) out << " x" << inst.instance_id << '\n';
  if (pool.empty()) out << " x_none\n";
  out << "End\n";
}

}  // namespace mec
