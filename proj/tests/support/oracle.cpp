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

#include "support/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mec::testing {

namespace {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// Raw-field formulas, kept separate from the library on purpose.
double raw_rate(const Problem& problem, const Job& job, const EdgeServer& server,
                const NetworkRing& ring, int b) {
  if (ring.per_bu_rate) return b * *ring.per_bu_rate;
  const double power = job.offload_power ? *job.offload_power
                                         : *problem.channel().default_offload_power;
  const double snr = power * *ring.channel_gain / problem.channel().noise_spectral_density;
  const double mbit_per_s = b * server.bu_size_mhz * std::log(1.0 + snr) / std::log(2.0);
  return mbit_per_s / 8.0;
}

double raw_utility(const Job& job, double t) {
  const double d = job.deadline;
  const double late = job.tolerance_factor * d;
  if (t <= d) return job.full_utility;
  if (t > late || job.tolerance_factor == 1.0) return 0.0;
  const double pos = (t - d) / (late - d);
  if (job.penalty.kind == PenaltyShape::Kind::kLinearDecreasing)
    return job.full_utility * (late - t) / (late - d);
  for (const auto& level : job.penalty.step_levels)
    if (pos <= level.time_fraction) return job.full_utility * level.utility_fraction;
  return 0.0;
}

const std::vector<double>* raw_table(const Job& job, ServerId server) {
  for (const auto& p : job.processing_times)
    if (p.server_id == server) return &p.seconds;
  return nullptr;
}

}  // namespace

Problem random_small_problem(Rng& rng, const SmallProblemOptions& options) {
  const int m = uniform_int(rng, 1, options.max_servers);
  std::vector<EdgeServer> servers;
  for (int k = 0; k < m; ++k) {
    EdgeServer s;
    s.server_id = 10 + k;
    s.bandwidth_units = uniform_int(rng, 1, options.max_units);
    s.computing_units = uniform_int(rng, 1, options.max_units);
    s.bu_size_mhz = uniform(rng, 1.0, 2.0);
    const int rings = uniform_int(rng, 1, 2);
    for (int r = 1; r <= rings; ++r) {
      NetworkRing ring;
      ring.ring_index = r;
      if (options.shannon_rings && coin(rng, 0.3)) {
        ring.channel_gain = uniform(rng, 0.5, 4.0);
      } else {
        ring.per_bu_rate = uniform(rng, 0.5, 2.0);
      }
      s.rings.push_back(ring);
    }
    servers.push_back(std::move(s));
  }

  const int n = uniform_int(rng, 1, options.max_jobs);
  std::vector<Job> jobs;
  for (int j = 0; j < n; ++j) {
    Job job;
    job.job_id = 100 + j;
    job.input_size_mb = uniform(rng, 0.1, 1.0);
    job.full_utility = uniform(rng, 1.0, 50.0);
    if (coin(rng, 0.3)) job.offload_power = uniform(rng, 0.5, 2.0);
    job.deadline = 1.0;  // replaced below once the draft problem exists
    job.tolerance_factor = coin(rng, 0.4) ? 1.0 : uniform(rng, 1.2, 2.5);
    if (options.step_penalties && coin(rng, 0.2)) {
      job.penalty.kind = PenaltyShape::Kind::kStep;
      job.penalty.step_levels = {{0.5, 0.6}, {1.0, 0.2}};
    }
    for (const EdgeServer& s : servers) {
      if (!coin(rng, 0.6)) continue;
      const int ring = uniform_int(rng, 1, static_cast<int>(s.rings.size()));
      job.accessible_rings.push_back({s.server_id, ring, uniform(rng, 0.5, 5.0)});
      ProcessingProfile profile{s.server_id, {}};
      const double base = uniform(rng, 0.2, 2.0);
      const double alpha = uniform(rng, 0.3, 1.0);
      for (int c = 1; c <= s.computing_units; ++c)
        profile.seconds.push_back(base / std::pow(static_cast<double>(c), alpha));
      job.processing_times.push_back(std::move(profile));
    }
    jobs.push_back(std::move(job));
  }
  ChannelEnv channel;
  channel.noise_spectral_density = 1.0;
  channel.default_offload_power = 1.0;

  // Deadlines sit between the fastest and slowest completion on one
  // accessible ring, skewed toward the fast end to keep pools small.
  Problem draft(servers, jobs, channel);
  for (Job& job : jobs) {
    if (job.accessible_rings.empty()) {
      job.deadline = uniform(rng, 0.5, 3.0);
      continue;
    }
    const RingAccess& a =
        job.accessible_rings[uniform_int(rng, 0, static_cast<int>(job.accessible_rings.size()) - 1)];
    const EdgeServer& s = draft.server(a.server_id);
    const NetworkRing& ring = *s.find_ring(a.ring_index);
    const std::vector<double>& table = *raw_table(job, a.server_id);
    const double fastest = job.input_size_mb / raw_rate(draft, job, s, ring, s.bandwidth_units) +
                           table.back();
    const double slowest = job.input_size_mb / raw_rate(draft, job, s, ring, 1) + table.front();
    const double u = uniform(rng, 0.0, 1.0);
    job.deadline = fastest + (slowest - fastest) * u * u * u;
  }
  return Problem(std::move(servers), std::move(jobs), channel);
}

SmallCase draw_small_case(Rng& rng, std::size_t max_pool, const SmallProblemOptions& options) {
  SmallCase out;
  for (;;) {
    ++out.draws;
    Problem problem = random_small_problem(rng, options);
    InstancePool pool = enumerate_instances(problem);
    if (pool.size() <= max_pool) {
      out.problem = std::move(problem);
      out.pool = std::move(pool);
      return out;
    }
  }
}

std::vector<OracleInstance> oracle_enumerate(const Problem& problem) {
  std::vector<OracleInstance> out;
  for (const Job& job : problem.jobs()) {
    std::vector<RingAccess> access = job.accessible_rings;
    std::sort(access.begin(), access.end(), [](const RingAccess& a, const RingAccess& b) {
      return std::pair(a.server_id, a.ring_index) < std::pair(b.server_id, b.ring_index);
    });
    for (const RingAccess& a : access) {
      const EdgeServer& s = problem.server(a.server_id);
      const NetworkRing& ring = *s.find_ring(a.ring_index);
      const std::vector<double>* table = raw_table(job, a.server_id);
      for (int b = 1; b <= s.bandwidth_units; ++b) {
        for (int c = 1; c <= s.computing_units; ++c) {
          const double t = job.input_size_mb / raw_rate(problem, job, s, ring, b) + (*table)[c - 1];
          if (t > job.tolerance_factor * job.deadline || t > a.dwell_time) continue;
          const double u = raw_utility(job, t);
          if (!(u > 0.0)) continue;
          out.push_back({job.job_id, s.server_id, a.ring_index, b, c, t, u});
        }
      }
    }
  }
  return out;
}

std::vector<std::string> oracle_violations(const Solution& solution, const InstancePool& pool,
                                           const Problem& problem) {
  std::vector<std::string> out;
  std::map<JobId, int> per_job;
  std::map<ServerId, std::pair<int, int>> used;
  double total = 0.0;
  const std::vector<OracleInstance> feasible = oracle_enumerate(problem);
  for (InstanceId id : solution.selected()) {
    if (id < 0 || id >= static_cast<InstanceId>(pool.size())) {
      out.push_back("unknown instance " + std::to_string(id));
      continue;
    }
    const AssignmentInstance& inst = pool[id];
    if (++per_job[inst.job_id] > 1) out.push_back("job " + std::to_string(inst.job_id) + " twice");
    used[inst.server_id].first += inst.bu_alloc;
    used[inst.server_id].second += inst.cu_alloc;
    const auto match = std::find_if(feasible.begin(), feasible.end(), [&](const OracleInstance& o) {
      return o.job_id == inst.job_id && o.server_id == inst.server_id &&
             o.ring_index == inst.ring_index && o.b == inst.bu_alloc && o.c == inst.cu_alloc;
    });
    if (match == feasible.end()) {
      out.push_back("instance " + std::to_string(id) + " is not feasible");
      continue;
    }
    if (std::abs(match->utility - inst.utility) > 1e-9 * std::max(1.0, match->utility))
      out.push_back("instance " + std::to_string(id) + " carries a wrong utility");
    total += match->utility;
  }
  for (const auto& [server, bc] : used) {
    const EdgeServer& s = problem.server(server);
    if (bc.first > s.bandwidth_units) out.push_back("server " + std::to_string(server) + " BU over");
    if (bc.second > s.computing_units) out.push_back("server " + std::to_string(server) + " CU over");
  }
  if (std::abs(total - solution.total_utility()) > 1e-9 * std::max(1.0, total))
    out.push_back("utility total mismatch");
  return out;
}

double oracle_optimum(const InstancePool& pool, const Problem& problem) {
  std::vector<std::vector<const AssignmentInstance*>> per_job(problem.num_jobs());
  for (const auto& inst : pool.all()) per_job[problem.job_index(inst.job_id)].push_back(&inst);
  std::vector<int> bu(problem.num_servers(), 0), cu(problem.num_servers(), 0);
  double best = 0.0;
  auto visit = [&](auto&& self, std::size_t j, double value) -> void {
    if (j == per_job.size()) {
      best = std::max(best, value);
      return;
    }
    self(self, j + 1, value);
    for (const AssignmentInstance* inst : per_job[j]) {
      const int k = problem.server_index(inst->server_id);
      if (bu[k] + inst->bu_alloc > problem.servers()[k].bandwidth_units ||
          cu[k] + inst->cu_alloc > problem.servers()[k].computing_units)
        continue;
      bu[k] += inst->bu_alloc;
      cu[k] += inst->cu_alloc;
      self(self, j + 1, value + inst->utility);
      bu[k] -= inst->bu_alloc;
      cu[k] -= inst->cu_alloc;
    }
  };
  visit(visit, 0, 0.0);
  return best;
}

double oracle_w1(const AssignmentInstance& inst, const AssignmentInstance& pivot,
                 double pivot_weight) {
  if (inst.job_id == pivot.job_id) return pivot_weight;
  if (inst.server_id == pivot.server_id)
    return pivot_weight * (static_cast<double>(inst.bu_alloc) / inst.server_bu +
                           static_cast<double>(inst.cu_alloc) / inst.server_cu);
  return 0.0;
}

}  // namespace mec::testing
