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

// Domain types for deadline-constrained joint offloading and resource
// allocation in a mobile edge computing (MEC) system: edge servers with
// network rings, jobs, assignment instances and solutions, plus the timing,
// utility and feasibility formulas everything else is built on.

#ifndef MEC_MODEL_HPP_
#define MEC_MODEL_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mec {

using ServerId = int;
using JobId = int;
using InstanceId = int;

// Invalid or inconsistent input (problem documents, configs, parameters).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A reference to a server or job that does not exist in the problem.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An internal invariant was found broken at run time (a solver bug).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Megahertz times log2(1 + snr) is Mbit/s; offload sizes are megabytes.
inline constexpr double kMbitPerMegabyte = 8.0;

// Exact non-negative fraction num/den with den > 0, ordered by value.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    return a.num * b.den <=> b.num * a.den;
  }
  friend bool operator==(const Ratio& a, const Ratio& b) {
    return a.num * b.den == b.num * a.den;
  }
};

struct NetworkRing {
  int ring_index = 1;
  std::optional<double> channel_gain;  // Shannon mode
  std::optional<double> per_bu_rate;   // direct-rate mode, MB/s per BU
  std::optional<double> inner_radius;  // meters
  std::optional<double> outer_radius;

  bool shannon_mode() const { return channel_gain.has_value(); }
};

struct EdgeServer {
  ServerId server_id = 0;
  int bandwidth_units = 1;
  double bu_size_mhz = 2.0;
  int computing_units = 1;
  std::vector<NetworkRing> rings;

  const NetworkRing* find_ring(int ring_index) const;
};

struct ChannelEnv {
  double noise_spectral_density = 1.0;
  std::optional<double> default_offload_power;
};

struct RingAccess {
  ServerId server_id = 0;
  int ring_index = 1;
  double dwell_time = 0.0;  // seconds
};

// Utility-reduction function applied between the deadline and the
// tolerated lateness bound gamma * deadline.
struct PenaltyShape {
  enum class Kind { kLinearDecreasing, kStep };

  // A step level (f, u) yields utility fraction u while the lateness
  // position (t - D) / (gamma*D - D) is at most f.
  struct StepLevel {
    double time_fraction = 1.0;
    double utility_fraction = 0.0;
  };

  Kind kind = Kind::kLinearDecreasing;
  std::vector<StepLevel> step_levels;

  // Fraction of full utility kept at completion time t, for D < t <= gamma*D.
  double fraction(double t, double deadline, double tolerance_factor) const;
};

// Processing time of one job on one server for c = 1..C_k computing units.
struct ProcessingProfile {
  ServerId server_id = 0;
  std::vector<double> seconds;  // seconds[c - 1]
};

struct Job {
  JobId job_id = 0;
  double input_size_mb = 0.0;
  double deadline = 0.0;
  double tolerance_factor = 1.0;
  double full_utility = 0.0;
  std::optional<double> offload_power;  // watts, Shannon mode only
  std::vector<RingAccess> accessible_rings;
  std::vector<ProcessingProfile> processing_times;
  PenaltyShape penalty;

  bool hard_deadline() const { return tolerance_factor == 1.0; }
  double latest_completion() const { return tolerance_factor * deadline; }

  // Throws ConfigError when (server_id, c) is not in the table.
  double processing_time(ServerId server_id, int computing_units) const;
};

// A job assignment <ring, bandwidth units, computing units> with its
// derived times and utility. job_index / server_index are dense positions
// in the owning Problem.
struct AssignmentInstance {
  InstanceId instance_id = 0;
  JobId job_id = 0;
  ServerId server_id = 0;
  int ring_index = 1;
  int bu_alloc = 1;
  int cu_alloc = 1;
  int server_bu = 1;  // B_k of the server
  int server_cu = 1;  // C_k of the server
  double offload_time = 0.0;
  double processing_time = 0.0;
  double completion_time = 0.0;
  double utility = 0.0;
  double norm_bu = 0.0;
  double norm_cu = 0.0;
  int job_index = 0;
  int server_index = 0;

  Ratio exact_norm_bu() const { return {bu_alloc, server_bu}; }
  Ratio exact_norm_cu() const { return {cu_alloc, server_cu}; }
  bool is_light() const { return 2 * bu_alloc <= server_bu && 2 * cu_alloc <= server_cu; }
};

// A validated problem instance. Servers and jobs are held sorted by id so
// dense indices follow id order.
class Problem {
 public:
  Problem() = default;
  // Validates every invariant; throws ConfigError on the first violation.
  Problem(std::vector<EdgeServer> servers, std::vector<Job> jobs, ChannelEnv channel);

  const std::vector<EdgeServer>& servers() const { return servers_; }
  const std::vector<Job>& jobs() const { return jobs_; }
  const ChannelEnv& channel() const { return channel_; }

  int num_servers() const { return static_cast<int>(servers_.size()); }
  int num_jobs() const { return static_cast<int>(jobs_.size()); }

  // Dense position of an id; throw StructuralError for unknown ids.
  int server_index(ServerId id) const;
  int job_index(JobId id) const;
  bool has_server(ServerId id) const { return server_pos_.contains(id); }
  bool has_job(JobId id) const { return job_pos_.contains(id); }

  const EdgeServer& server(ServerId id) const { return servers_[server_index(id)]; }
  const Job& job(JobId id) const { return jobs_[job_index(id)]; }

 private:
  void validate() const;

  std::vector<EdgeServer> servers_;
  std::vector<Job> jobs_;
  ChannelEnv channel_;
  std::unordered_map<ServerId, int> server_pos_;
  std::unordered_map<JobId, int> job_pos_;
};

// Shannon capacity of `bu` units in Mbit/s: bu * beta * log2(1 + p*h/sigma^2).
double shannon_rate_mbps(int bu, double bu_size_mhz, double offload_power,
                         double channel_gain, double noise);

// Offloading rate in MB/s. Direct-rate rings return bu * per_bu_rate;
// Shannon rings convert the Shannon capacity with kMbitPerMegabyte.
double compute_offload_rate(const Job& job, const EdgeServer& server, const NetworkRing& ring,
                            int bu, const ChannelEnv& channel);

double compute_offload_time(double input_size_mb, double rate);
inline double compute_offload_time(const Job& job, double rate) {
  return compute_offload_time(job.input_size_mb, rate);
}

// Piecewise utility: full up to the deadline, penalised up to
// gamma * deadline, zero afterwards.
double compute_utility(const Job& job, double completion_time);

// Selected instances plus per-server resource bookkeeping. Indexed by the
// dense positions of the Problem it was created for.
class Solution {
 public:
  Solution() = default;
  explicit Solution(const Problem& problem);

  bool can_add(const AssignmentInstance& inst) const;
  // Precondition: can_add(inst).
  void add(const AssignmentInstance& inst);
  // Precondition: inst is currently selected.
  void remove(const AssignmentInstance& inst);

  const std::vector<InstanceId>& selected() const { return selected_; }
  double total_utility() const { return total_utility_; }
  int bu_used(int server_index) const { return bu_used_[server_index]; }
  int cu_used(int server_index) const { return cu_used_[server_index]; }
  int bu_capacity(int server_index) const { return bu_cap_[server_index]; }
  int cu_capacity(int server_index) const { return cu_cap_[server_index]; }
  // Instance selected for the job, or -1.
  InstanceId selected_for_job(int job_index) const { return job_choice_[job_index]; }
  std::size_t size() const { return selected_.size(); }
  bool empty() const { return selected_.empty(); }

 private:
  std::vector<InstanceId> selected_;
  double total_utility_ = 0.0;
  std::vector<int> bu_used_;
  std::vector<int> cu_used_;
  std::vector<int> bu_cap_;
  std::vector<int> cu_cap_;
  std::vector<InstanceId> job_choice_;
};

// True iff adding inst keeps both server capacities and the one-instance-
// per-job rule. Throws StructuralError when inst refers to unknown ids.
bool check_add_feasible(const Solution& solution, const AssignmentInstance& inst,
                        const Problem& problem);

}  // namespace mec

#endif  // MEC_MODEL_HPP_
