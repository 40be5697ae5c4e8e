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

#include "mec/model.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <set>
#include <string>

namespace mec {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

void validate_server(const EdgeServer& s) {
  const std::string where = "server " + std::to_string(s.server_id) + ": ";
  if (s.bandwidth_units < 1) fail(where + "bandwidth_units must be >= 1");
  if (s.computing_units < 1) fail(where + "computing_units must be >= 1");
  if (!(s.bu_size_mhz > 0)) fail(where + "bu_size_mhz must be > 0");
  if (s.rings.empty()) fail(where + "at least one ring is required");
  for (std::size_t i = 0; i < s.rings.size(); ++i) {
    const NetworkRing& r = s.rings[i];
    const std::string rw = where + "ring " + std::to_string(r.ring_index) + ": ";
    if (r.ring_index < 1) fail(rw + "ring_index must be positive");
    if (i > 0 && r.ring_index <= s.rings[i - 1].ring_index)
      fail(where + "ring indices must be distinct and ascending");
    if (r.channel_gain.has_value() == r.per_bu_rate.has_value())
      fail(rw + "exactly one of channel_gain and per_bu_rate must be set");
    if (r.channel_gain && !(*r.channel_gain > 0)) fail(rw + "channel_gain must be > 0");
    if (r.per_bu_rate && !(*r.per_bu_rate > 0)) fail(rw + "per_bu_rate must be > 0");
    if (r.inner_radius && r.outer_radius && !(*r.inner_radius < *r.outer_radius))
      fail(rw + "inner_radius must be < outer_radius");
  }
}

void validate_penalty(const PenaltyShape& p, const std::string& where) {
  if (p.kind != PenaltyShape::Kind::kStep) return;
  if (p.step_levels.empty()) fail(where + "step penalty needs at least one level");
  double prev_t = 0.0;
  double prev_u = 1.0;
  for (const auto& level : p.step_levels) {
    if (!(level.time_fraction > prev_t) || level.time_fraction > 1.0)
      fail(where + "step time fractions must increase within (0, 1]");
    if (level.utility_fraction < 0.0 || level.utility_fraction > prev_u)
      fail(where + "step utility fractions must be non-increasing within [0, 1]");
    prev_t = level.time_fraction;
    prev_u = level.utility_fraction;
  }
}

}  // namespace

const NetworkRing* EdgeServer::find_ring(int ring_index) const {
  for (const auto& r : rings)
    if (r.ring_index == ring_index) return &r;
  return nullptr;
}

double PenaltyShape::fraction(double t, double deadline, double tolerance_factor) const {
  const double latest = tolerance_factor * deadline;
  if (!(latest > deadline)) return 0.0;
  const double span = latest - deadline;
  switch (kind) {
    case Kind::kLinearDecreasing:
      return std::clamp((latest - t) / span, 0.0, 1.0);
    case Kind::kStep: {
      const double pos = (t - deadline) / span;
      for (const auto& level : step_levels)
        if (pos <= level.time_fraction) return level.utility_fraction;
      return 0.0;
    }
  }
  return 0.0;
}

double Job::processing_time(ServerId server_id, int computing_units) const {
  for (const auto& p : processing_times) {
    if (p.server_id != server_id) continue;
    if (computing_units < 1 || computing_units > static_cast<int>(p.seconds.size())) break;
    return p.seconds[computing_units - 1];
  }
  throw ConfigError("job " + std::to_string(job_id) + ": no processing time for server " +
                    std::to_string(server_id) + " with " + std::to_string(computing_units) +
                    " computing units");
}

Problem::Problem(std::vector<EdgeServer> servers, std::vector<Job> jobs, ChannelEnv channel)
    : servers_(std::move(servers)), jobs_(std::move(jobs)), channel_(channel) {
  std::sort(servers_.begin(), servers_.end(),
            [](const EdgeServer& a, const EdgeServer& b) { return a.server_id < b.server_id; });
  std::sort(jobs_.begin(), jobs_.end(),
            [](const Job& a, const Job& b) { return a.job_id < b.job_id; });
  for (int i = 0; i < num_servers(); ++i)
    if (!server_pos_.emplace(servers_[i].server_id, i).second)
      fail("duplicate server_id " + std::to_string(servers_[i].server_id));
  for (int i = 0; i < num_jobs(); ++i)
    if (!job_pos_.emplace(jobs_[i].job_id, i).second)
      fail("duplicate job_id " + std::to_string(jobs_[i].job_id));
  validate();
}

void Problem::validate() const {
  if (!(channel_.noise_spectral_density > 0)) fail("channel_env: noise_spectral_density must be > 0");
  for (const auto& s : servers_) validate_server(s);
  for (const auto& j : jobs_) {
    const std::string where = "job " + std::to_string(j.job_id) + ": ";
    if (!(j.input_size_mb > 0)) fail(where + "input_size_mb must be > 0");
    if (!(j.deadline > 0)) fail(where + "deadline must be > 0");
    if (!(j.tolerance_factor >= 1.0)) fail(where + "tolerance_factor must be >= 1");
    if (!(j.full_utility > 0)) fail(where + "full_utility must be > 0");
    if (static_cast<int>(j.accessible_rings.size()) > num_servers())
      fail(where + "more accessible rings than servers");
    std::set<ServerId> seen;
    for (const auto& a : j.accessible_rings) {
      if (!has_server(a.server_id))
        fail(where + "accessible ring on unknown server " + std::to_string(a.server_id));
      if (!server(a.server_id).find_ring(a.ring_index))
        fail(where + "server " + std::to_string(a.server_id) + " has no ring " +
             std::to_string(a.ring_index));
      if (!(a.dwell_time > 0)) fail(where + "dwell_time must be > 0");
      if (!seen.insert(a.server_id).second)
        fail(where + "at most one accessible ring per server");
      const auto table = std::find_if(j.processing_times.begin(), j.processing_times.end(),
                                      [&](const auto& p) { return p.server_id == a.server_id; });
      if (table == j.processing_times.end() ||
          static_cast<int>(table->seconds.size()) < server(a.server_id).computing_units)
        fail(where + "processing times for server " + std::to_string(a.server_id) +
             " must cover every computing unit count");
    }
    for (const auto& p : j.processing_times) {
      if (!has_server(p.server_id))
        fail(where + "processing times for unknown server " + std::to_string(p.server_id));
      for (std::size_t c = 0; c < p.seconds.size(); ++c) {
        if (!(p.seconds[c] >= 0)) fail(where + "processing times must be non-negative");
        if (c > 0 && p.seconds[c] > p.seconds[c - 1])
          fail(where + "processing times must be non-increasing in computing units");
      }
    }
    validate_penalty(j.penalty, where);
  }
}

int Problem::server_index(ServerId id) const {
  auto it = server_pos_.find(id);
  if (it == server_pos_.end()) throw StructuralError("unknown server_id " + std::to_string(id));
  return it->second;
}

int Problem::job_index(JobId id) const {
  auto it = job_pos_.find(id);
  if (it == job_pos_.end()) throw StructuralError("unknown job_id " + std::to_string(id));
  return it->second;
}

double shannon_rate_mbps(int bu, double bu_size_mhz, double offload_power, double channel_gain,
                         double noise) {
  return bu * bu_size_mhz * std::log2(1.0 + offload_power * channel_gain / noise);
}

double compute_offload_rate(const Job& job, const EdgeServer& server, const NetworkRing& ring,
                            int bu, const ChannelEnv& channel) {
  if (bu < 1) throw std::domain_error("bandwidth units must be >= 1");
  if (ring.per_bu_rate) return bu * *ring.per_bu_rate;
  if (!ring.channel_gain)
    throw ConfigError("ring " + std::to_string(ring.ring_index) + " has no channel parameters");
  const std::optional<double> power =
      job.offload_power ? job.offload_power : channel.default_offload_power;
  if (!power || !(*power > 0))
    throw ConfigError("job " + std::to_string(job.job_id) +
                      ": Shannon-mode rate needs offload_power or a default");
  if (!(channel.noise_spectral_density > 0))
    throw ConfigError("channel_env: noise_spectral_density must be > 0");
  return shannon_rate_mbps(bu, server.bu_size_mhz, *power, *ring.channel_gain,
                           channel.noise_spectral_density) /
         kMbitPerMegabyte;
}

double compute_offload_time(double input_size_mb, double rate) {
  if (!(rate > 0)) throw std::domain_error("offload rate must be > 0");
  return input_size_mb / rate;
}

double compute_utility(const Job& job, double completion_time) {
  if (completion_time <= job.deadline) return job.full_utility;
  if (completion_time <= job.latest_completion())
    return job.full_utility *
           job.penalty.fraction(completion_time, job.deadline, job.tolerance_factor);
  return 0.0;
}

Solution::Solution(const Problem& problem)
    : bu_used_(problem.num_servers(), 0),
      cu_used_(problem.num_servers(), 0),
      job_choice_(problem.num_jobs(), -1) {
  bu_cap_.reserve(problem.num_servers());
  cu_cap_.reserve(problem.num_servers());
  for (const auto& s : problem.servers()) {
    bu_cap_.push_back(s.bandwidth_units);
    cu_cap_.push_back(s.computing_units);
  }
}

bool Solution::can_add(const AssignmentInstance& inst) const {
  const int k = inst.server_index;
  return job_choice_[inst.job_index] < 0 && bu_used_[k] + inst.bu_alloc <= bu_cap_[k] &&
         cu_used_[k] + inst.cu_alloc <= cu_cap_[k];
}

void Solution::add(const AssignmentInstance& inst) {
  assert(can_add(inst));
  selected_.push_back(inst.instance_id);
  job_choice_[inst.job_index] = inst.instance_id;
  bu_used_[inst.server_index] += inst.bu_alloc;
  cu_used_[inst.server_index] += inst.cu_alloc;
  total_utility_ += inst.utility;
}

void Solution::remove(const AssignmentInstance& inst) {
  auto it = std::find(selected_.begin(), selected_.end(), inst.instance_id);
  assert(it != selected_.end());
  selected_.erase(it);
  job_choice_[inst.job_index] = -1;
  bu_used_[inst.server_index] -= inst.bu_alloc;
  cu_used_[inst.server_index] -= inst.cu_alloc;
  total_utility_ -= inst.utility;
}

bool check_add_feasible(const Solution& solution, const AssignmentInstance& inst,
                        const Problem& problem) {
  const int k = problem.server_index(inst.server_id);
  const int j = problem.job_index(inst.job_id);
  if (k != inst.server_index || j != inst.job_index)
    throw StructuralError("instance " + std::to_string(inst.instance_id) +
                          " does not belong to this problem");
  return solution.can_add(inst);
}

}  // namespace mec
