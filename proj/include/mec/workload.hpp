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

// Synthetic MEC topologies and jobsets. Resource demand is set by sampled
// utilization levels spread over jobs with randfixedsum; ring access and
// dwell times come from vehicle positions at the jobset release time.

#ifndef MEC_WORKLOAD_HPP_
#define MEC_WORKLOAD_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "mec/mobility.hpp"
#include "mec/model.hpp"
#include "mec/randfixedsum.hpp"

namespace mec {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct WorkloadConfig {
  int n_servers = 20;
  std::vector<int> bu_per_server = {20, 40};  // B_k drawn from this set
  double bu_size_mhz = 2.0;
  int cu_per_server = 25;
  std::vector<Interval> ring_radii = {{0.0, 100.0}, {100.0, 200.0}};
  std::vector<double> ring_rates = {1.65, 1.15};  // MB/s per BU
  int jobset_size = 200;
  Interval ru_b_range{0.6, 0.9};
  Interval ru_c_range{0.6, 0.9};
  Interval input_size_range{0.15, 0.63};  // MB
  int input_size_levels = 45;             // evenly spaced values in the range
  Interval utility_range{20.0, 60.0};
  Interval gamma_range{1.8, 2.2};
  double hard_deadline_fraction = 0.5;
  Interval deadline_slack{1.0, 1.2};
  std::vector<double> gpu_factors = {0.5, 0.75, 1.0, 1.25, 1.5};

  double area_side_m = 1000.0;
  int n_vehicles = 400;
  Interval speed_range{5.0, 15.0};  // m/s
  double time_window_s = 900.0;
  double dwell_horizon_s = 60.0;
  std::optional<std::string> trace_path;
  std::optional<std::string> profile_path;

  std::uint64_t seed = 1;           // jobset stream
  std::uint64_t topology_seed = 7;  // servers, GPUs and synthetic vehicles
  int max_resample = 200;

  // Throws ConfigError on the first invalid field.
  void validate() const;
};

// Missing keys keep their defaults; unknown keys are rejected.
WorkloadConfig workload_from_json(const nlohmann::json& j);
nlohmann::json workload_to_json(const WorkloadConfig& cfg);

struct AppProfile {
  std::string name;
  double base_time = 1.0;         // seconds at c = 1 with gpu factor 1
  double speedup_exponent = 1.0;  // alpha in (0, 1]
};

const std::vector<AppProfile>& default_app_profiles();

// seconds[c - 1] = base_time * gpu_factor / c^alpha for c = 1..max_c.
std::vector<double> synth_processing_table(const AppProfile& app, double gpu_factor, int max_c);

// Measured processing times keyed by (app_id, gpu_id); seconds[c - 1].
struct ProfileTable {
  std::map<std::pair<int, int>, std::vector<double>> seconds;

  std::vector<int> app_ids() const;
};

// CSV with header app_id,gpu_id,computing_units,seconds. Every listed
// (app, gpu) pair must cover c = 1..max without gaps.
ProfileTable parse_profile(const std::string& text, const std::string& source_name = "profile");
ProfileTable load_profile(const std::string& path);

struct ServerSite {
  double x = 0.0;
  double y = 0.0;
  int gpu_id = 0;  // index into gpu_factors
};

struct Topology {
  std::vector<EdgeServer> servers;  // server_id = position
  std::vector<ServerSite> sites;
  std::vector<double> road_xs;
  std::vector<double> road_ys;
  double area_side_m = 0.0;
};

// Servers on a near-square lattice with a road through every row and column.
Topology build_topology(const WorkloadConfig& cfg, Rng& rng);

struct Jobset {
  std::vector<Job> jobs;
  double ru_b = 0.0;
  double ru_c = 0.0;
  double release_time = 0.0;
  std::vector<double> bu_share;  // randfixedsum output, sums to ru_b * total BU
  std::vector<double> cu_share;
  std::vector<int> bu_demand;    // rounded shares b*_j
  std::vector<int> cu_demand;
};

Jobset synthesize_jobset(const WorkloadConfig& cfg, const Topology& topology,
                         const MobilitySource& mobility, Rng& rng,
                         const ProfileTable* profiles = nullptr);

struct SynthesizedProblem {
  Problem problem;
  double ru_b = 0.0;
  double ru_c = 0.0;
};

// Topology and synthetic vehicles come from cfg.topology_seed, the jobset
// from jobset_seed; trace and profile files are loaded when configured.
SynthesizedProblem synthesize_problem(const WorkloadConfig& cfg, std::uint64_t jobset_seed);

// Round half up, then clamp to [1, cap].
int round_demand(double share, int cap);

}  // namespace mec

#endif  // MEC_WORKLOAD_HPP_
