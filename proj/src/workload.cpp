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

#include "mec/workload.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <string_view>

namespace mec {

using nlohmann::json;

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("workload: " + what);
}

void require_interval(const Interval& r, const std::string& name, double min_lo) {
  require(std::isfinite(r.lo) && std::isfinite(r.hi), name + " must be finite");
  require(r.lo <= r.hi, name + " must have lo <= hi");
  require(r.lo >= min_lo, name + " lower end is out of range");
}

double draw(const Interval& r, Rng& rng) {
  if (r.lo == r.hi) return r.lo;
  return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
}

std::size_t pick(std::size_t n, Rng& rng) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

Interval interval_from_json(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError("workload: " + key + " must be a [lo, hi] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json interval_to_json(const Interval& r) { return json::array({r.lo, r.hi}); }

template <typename T>
T typed(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("workload: " + key + " has the wrong type");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ConfigError(std::string("cannot open ") + what + " file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

void WorkloadConfig::validate() const {
  require(n_servers >= 1, "n_servers must be >= 1");
  require(!bu_per_server.empty(), "bu_per_server must not be empty");
  for (int b : bu_per_server) require(b >= 1, "bu_per_server entries must be >= 1");
  require(bu_size_mhz > 0.0, "bu_size_mhz must be positive");
  require(cu_per_server >= 1, "cu_per_server must be >= 1");
  require(!ring_radii.empty(), "ring_radii must not be empty");
  require(ring_rates.size() == ring_radii.size(), "ring_rates must match ring_radii");
  for (const Interval& r : ring_radii) {
    require_interval(r, "ring radius", 0.0);
    require(r.lo < r.hi, "ring radius interval must be non-degenerate");
  }
  for (double rate : ring_rates) require(rate > 0.0, "ring_rates must be positive");
  require(jobset_size >= 1, "jobset_size must be >= 1");
  require_interval(ru_b_range, "ru_b_range", 0.0);
  require_interval(ru_c_range, "ru_c_range", 0.0);
  require(ru_b_range.lo > 0.0 && ru_c_range.lo > 0.0, "utilization ranges must be positive");
  require_interval(input_size_range, "input_size_range", 0.0);
  require(input_size_range.lo > 0.0, "input sizes must be positive");
  require(input_size_levels >= 1, "input_size_levels must be >= 1");
  require_interval(utility_range, "utility_range", 0.0);
  require(utility_range.lo > 0.0, "utilities must be positive");
  require_interval(gamma_range, "gamma_range", 1.0);
  require(hard_deadline_fraction >= 0.0 && hard_deadline_fraction <= 1.0,
          "hard_deadline_fraction must lie in [0, 1]");
  require_interval(deadline_slack, "deadline_slack", 1.0);
  require(!gpu_factors.empty(), "gpu_factors must not be empty");
  for (double g : gpu_factors) require(g > 0.0, "gpu_factors must be positive");
  require(area_side_m > 0.0, "area_side_m must be positive");
  require(n_vehicles >= 1, "n_vehicles must be >= 1");
  require_interval(speed_range, "speed_range", 0.0);
  require(time_window_s > 0.0, "time_window_s must be positive");
  require(dwell_horizon_s > 0.0, "dwell_horizon_s must be positive");
  require(max_resample >= 1, "max_resample must be >= 1");
}

WorkloadConfig workload_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("workload: expected a JSON object");
  WorkloadConfig cfg;
  for (const auto& [key, v] : j.items()) {
    if (key == "n_servers") cfg.n_servers = typed<int>(v, key);
    else if (key == "bu_per_server") cfg.bu_per_server = typed<std::vector<int>>(v, key);
    else if (key == "bu_size_mhz") cfg.bu_size_mhz = typed<double>(v, key);
    else if (key == "cu_per_server") cfg.cu_per_server = typed<int>(v, key);
    else if (key == "ring_radii") {
      if (!v.is_array()) throw ConfigError("workload: ring_radii must be an array");
      cfg.ring_radii.clear();
      for (const json& r : v) cfg.ring_radii.push_back(interval_from_json(r, key));
    } else if (key == "ring_rates") cfg.ring_rates = typed<std::vector<double>>(v, key);
    else if (key == "jobset_size") cfg.jobset_size = typed<int>(v, key);
    else if (key == "ru_b_range") cfg.ru_b_range = interval_from_json(v, key);
    else if (key == "ru_c_range") cfg.ru_c_range = interval_from_json(v, key);
    else if (key == "input_size_range") cfg.input_size_range = interval_from_json(v, key);
    else if (key == "input_size_levels") cfg.input_size_levels = typed<int>(v, key);
    else if (key == "utility_range") cfg.utility_range = interval_from_json(v, key);
    else if (key == "gamma_range") cfg.gamma_range = interval_from_json(v, key);
    else if (key == "hard_deadline_fraction") cfg.hard_deadline_fraction = typed<double>(v, key);
    else if (key == "deadline_slack") cfg.deadline_slack = interval_from_json(v, key);
    else if (key == "gpu_factors") cfg.gpu_factors = typed<std::vector<double>>(v, key);
    else if (key == "area_side_m") cfg.area_side_m = typed<double>(v, key);
    else if (key == "n_vehicles") cfg.n_vehicles = typed<int>(v, key);
    else if (key == "speed_range") cfg.speed_range = interval_from_json(v, key);
    else if (key == "time_window_s") cfg.time_window_s = typed<double>(v, key);
    else if (key == "dwell_horizon_s") cfg.dwell_horizon_s = typed<double>(v, key);
    else if (key == "trace_path") cfg.trace_path = typed<std::string>(v, key);
    else if (key == "profile_path") cfg.profile_path = typed<std::string>(v, key);
    else if (key == "seed") cfg.seed = typed<std::uint64_t>(v, key);
    else if (key == "topology_seed") cfg.topology_seed = typed<std::uint64_t>(v, key);
    else if (key == "max_resample") cfg.max_resample = typed<int>(v, key);
    else throw ConfigError("workload: unknown key \"" + key + "\"");
  }
  cfg.validate();
  return cfg;
}

json workload_to_json(const WorkloadConfig& cfg) {
  json radii = json::array();
  for (const Interval& r : cfg.ring_radii) radii.push_back(interval_to_json(r));
  json out = {
      {"n_servers", cfg.n_servers},
      {"bu_per_server", cfg.bu_per_server},
      {"bu_size_mhz", cfg.bu_size_mhz},
      {"cu_per_server", cfg.cu_per_server},
      {"ring_radii", radii},
      {"ring_rates", cfg.ring_rates},
      {"jobset_size", cfg.jobset_size},
      {"ru_b_range", interval_to_json(cfg.ru_b_range)},
      {"ru_c_range", interval_to_json(cfg.ru_c_range)},
      {"input_size_range", interval_to_json(cfg.input_size_range)},
      {"input_size_levels", cfg.input_size_levels},
      {"utility_range", interval_to_json(cfg.utility_range)},
      {"gamma_range", interval_to_json(cfg.gamma_range)},
      {"hard_deadline_fraction", cfg.hard_deadline_fraction},
      {"deadline_slack", interval_to_json(cfg.deadline_slack)},
      {"gpu_factors", cfg.gpu_factors},
      {"area_side_m", cfg.area_side_m},
      {"n_vehicles", cfg.n_vehicles},
      {"speed_range", interval_to_json(cfg.speed_range)},
      {"time_window_s", cfg.time_window_s},
      {"dwell_horizon_s", cfg.dwell_horizon_s},
      {"seed", cfg.seed},
      {"topology_seed", cfg.topology_seed},
      {"max_resample", cfg.max_resample},
  };
  if (cfg.trace_path) out["trace_path"] = *cfg.trace_path;
  if (cfg.profile_path) out["profile_path"] = *cfg.profile_path;
  return out;
}

const std::vector<AppProfile>& default_app_profiles() {
  // Stand-ins for nine object-detection backbones; heavier networks run
  // longer and parallelise slightly better.
  static const std::vector<AppProfile> kApps = {
      {"resnet34", 0.30, 0.80},    {"resnet50", 0.45, 0.85},    {"resnet101", 0.75, 0.90},
      {"densenet121", 0.50, 0.75}, {"densenet169", 0.65, 0.78}, {"vgg11", 0.55, 0.88},
      {"vgg13", 0.70, 0.88},       {"vgg16", 0.85, 0.90},       {"vgg19", 1.00, 0.92},
  };
  return kApps;
}

std::vector<double> synth_processing_table(const AppProfile& app, double gpu_factor, int max_c) {
  if (!(app.base_time > 0.0)) throw ConfigError("app profile base_time must be positive");
  if (!(app.speedup_exponent > 0.0 && app.speedup_exponent <= 1.0))
    throw ConfigError("app profile speedup exponent must lie in (0, 1]");
  if (!(gpu_factor > 0.0)) throw ConfigError("gpu factor must be positive");
  std::vector<double> seconds(std::max(max_c, 0));
  const double anchor = app.base_time * gpu_factor;
  for (int c = 1; c <= max_c; ++c)
    seconds[c - 1] = c == 1 ? anchor : anchor / std::pow(static_cast<double>(c), app.speedup_exponent);
  return seconds;
}

std::vector<int> ProfileTable::app_ids() const {
  std::set<int> ids;
  for (const auto& entry : seconds) ids.insert(entry.first.first);
  return {ids.begin(), ids.end()};
}

ProfileTable parse_profile(const std::string& text, const std::string& source_name) {
  std::map<std::pair<int, int>, std::map<int, double>> raw;
  std::istringstream in(text);
  std::string line_text;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line_text)) {
    ++line_no;
    const std::string_view line = trim(line_text);
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(trim(line.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    auto fail = [&](const std::string& what) {
      throw ConfigError(source_name + ":" + std::to_string(line_no) + ": " + what);
    };
    if (!header_seen) {
      header_seen = true;
      if (fields.size() == 4 && fields[0] == "app_id") {
        if (fields[1] != "gpu_id" || fields[2] != "computing_units" || fields[3] != "seconds")
          fail("expected header app_id,gpu_id,computing_units,seconds");
        continue;
      }
    }
    if (fields.size() != 4) fail("expected 4 fields, got " + std::to_string(fields.size()));
    int app = 0, gpu = 0, c = 0;
    double s = 0.0;
    if (!parse_number(fields[0], app)) fail("bad app_id");
    if (!parse_number(fields[1], gpu) || gpu < 0) fail("bad gpu_id");
    if (!parse_number(fields[2], c) || c < 1) fail("bad computing_units");
    if (!parse_number(fields[3], s) || !(s > 0.0) || !std::isfinite(s)) fail("bad seconds");
    if (!raw[{app, gpu}].emplace(c, s).second) fail("duplicate entry");
  }
  ProfileTable table;
  for (auto& [key, by_c] : raw) {
    std::vector<double> seconds;
    for (const auto& [c, s] : by_c) {
      if (c != static_cast<int>(seconds.size()) + 1)
        throw ConfigError(source_name + ": app " + std::to_string(key.first) + " gpu " +
                          std::to_string(key.second) + " is missing computing_units " +
                          std::to_string(seconds.size() + 1));
      seconds.push_back(s);
    }
    table.seconds.emplace(key, std::move(seconds));
  }
  if (table.seconds.empty()) throw ConfigError(source_name + ": no entries");
  return table;
}

ProfileTable load_profile(const std::string& path) {
  return parse_profile(read_file(path, "profile"), path);
}

Topology build_topology(const WorkloadConfig& cfg, Rng& rng) {
  cfg.validate();
  Topology topo;
  topo.area_side_m = cfg.area_side_m;
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(cfg.n_servers))));
  const int rows = (cfg.n_servers + cols - 1) / cols;
  const double cell_w = cfg.area_side_m / cols;
  const double cell_h = cfg.area_side_m / rows;
  std::set<double> xs, ys;
  for (int k = 0; k < cfg.n_servers; ++k) {
    ServerSite site;
    site.x = (k % cols + 0.5) * cell_w;
    site.y = (k / cols + 0.5) * cell_h;
    site.gpu_id = static_cast<int>(pick(cfg.gpu_factors.size(), rng));
    xs.insert(site.x);
    ys.insert(site.y);

    EdgeServer server;
    server.server_id = k;
    server.bandwidth_units = cfg.bu_per_server[pick(cfg.bu_per_server.size(), rng)];
    server.bu_size_mhz = cfg.bu_size_mhz;
    server.computing_units = cfg.cu_per_server;
    for (std::size_t r = 0; r < cfg.ring_radii.size(); ++r) {
      NetworkRing ring;
      ring.ring_index = static_cast<int>(r) + 1;
      ring.per_bu_rate = cfg.ring_rates[r];
      ring.inner_radius = cfg.ring_radii[r].lo;
      ring.outer_radius = cfg.ring_radii[r].hi;
      server.rings.push_back(ring);
    }
    topo.servers.push_back(std::move(server));
    topo.sites.push_back(site);
  }
  topo.road_xs.assign(xs.begin(), xs.end());
  topo.road_ys.assign(ys.begin(), ys.end());
  return topo;
}

int round_demand(double share, int cap) {
  const int rounded = static_cast<int>(std::floor(share + 0.5));
  return std::clamp(rounded, 1, std::max(cap, 1));
}

Jobset synthesize_jobset(const WorkloadConfig& cfg, const Topology& topology,
                         const MobilitySource& mobility, Rng& rng, const ProfileTable* profiles) {
  cfg.validate();
  const int n = cfg.jobset_size;
  const int m = static_cast<int>(topology.servers.size());
  if (m == 0) throw ConfigError("workload: topology has no servers");

  int total_bu = 0, total_cu = 0;
  int min_bu = std::numeric_limits<int>::max(), min_cu = std::numeric_limits<int>::max();
  for (const EdgeServer& s : topology.servers) {
    total_bu += s.bandwidth_units;
    total_cu += s.computing_units;
    min_bu = std::min(min_bu, s.bandwidth_units);
    min_cu = std::min(min_cu, s.computing_units);
  }

  Jobset out;
  out.ru_b = draw(cfg.ru_b_range, rng);
  out.ru_c = draw(cfg.ru_c_range, rng);
  // Shares are capped at the smallest server so a job's demand fits
  // wherever it ends up.
  const double bu_total_demand = out.ru_b * total_bu;
  const double cu_total_demand = out.ru_c * total_cu;
  if (bu_total_demand > static_cast<double>(n) * min_bu ||
      cu_total_demand > static_cast<double>(n) * min_cu)
    throw ConfigError("workload: utilization too high for " + std::to_string(n) +
                      " jobs under per-server capacity");
  out.bu_share = randfixedsum(n, bu_total_demand, 0.0, min_bu, rng);
  out.cu_share = randfixedsum(n, cu_total_demand, 0.0, min_cu, rng);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const int n_hard = static_cast<int>(std::floor(cfg.hard_deadline_fraction * n + 0.5));
  std::vector<bool> hard(n, false);
  for (int i = 0; i < n_hard; ++i) hard[order[i]] = true;

  out.release_time = std::uniform_real_distribution<double>(mobility.start_time(),
                                                            mobility.end_time())(rng);
  const std::vector<VehicleState> active = mobility.active_at(out.release_time);
  if (active.empty()) throw ConfigError("workload: no vehicle is active at the release time");

  std::vector<int> app_ids;
  if (profiles) {
    app_ids = profiles->app_ids();
  } else {
    app_ids.resize(default_app_profiles().size());
    std::iota(app_ids.begin(), app_ids.end(), 0);
  }

  auto table_for = [&](int app, int k) -> std::vector<double> {
    const EdgeServer& server = topology.servers[k];
    const int gpu = topology.sites[k].gpu_id;
    if (!profiles) {
      return synth_processing_table(default_app_profiles()[app], cfg.gpu_factors[gpu],
                                    server.computing_units);
    }
    const auto it = profiles->seconds.find({app, gpu});
    if (it == profiles->seconds.end() ||
        static_cast<int>(it->second.size()) < server.computing_units)
      throw ConfigError("workload: profile lacks app " + std::to_string(app) + " on gpu " +
                        std::to_string(gpu) + " up to " +
                        std::to_string(server.computing_units) + " computing units");
    return {it->second.begin(), it->second.begin() + server.computing_units};
  };

  const double level_step =
      cfg.input_size_levels > 1
          ? (cfg.input_size_range.hi - cfg.input_size_range.lo) / (cfg.input_size_levels - 1)
          : 0.0;

  out.bu_demand.resize(n);
  out.cu_demand.resize(n);
  out.jobs.reserve(n);
  for (int j = 0; j < n; ++j) {
    const int b_star = round_demand(out.bu_share[j], min_bu);
    const int c_star = round_demand(out.cu_share[j], min_cu);
    out.bu_demand[j] = b_star;
    out.cu_demand[j] = c_star;

    Job job;
    job.job_id = j;
    job.input_size_mb =
        cfg.input_size_range.lo + level_step * static_cast<double>(pick(cfg.input_size_levels, rng));
    job.full_utility = draw(cfg.utility_range, rng);
    job.tolerance_factor = hard[j] ? 1.0 : draw(cfg.gamma_range, rng);
    const int app = app_ids[pick(app_ids.size(), rng)];
    const double slack = draw(cfg.deadline_slack, rng);
    job.penalty.kind = PenaltyShape::Kind::kLinearDecreasing;

    // A vehicle outside every ring, or one whose best ring is left before
    // the job could finish, is replaced by another active vehicle.
    double best_time = std::numeric_limits<double>::infinity();
    std::vector<RingAccess> access;
    for (int attempt = 0; attempt < cfg.max_resample && !std::isfinite(best_time); ++attempt) {
      const VehicleState& v = active[pick(active.size(), rng)];
      access.clear();
      for (int k = 0; k < m; ++k) {
        const EdgeServer& server = topology.servers[k];
        const double dx = v.x - topology.sites[k].x;
        const double dy = v.y - topology.sites[k].y;
        for (const NetworkRing& ring : server.rings) {
          const double dwell = ring_dwell_time(dx, dy, v.vx, v.vy, ring.inner_radius.value_or(0.0),
                                               ring.outer_radius.value_or(0.0),
                                               cfg.dwell_horizon_s);
          if (dwell > 0.0) access.push_back({server.server_id, ring.ring_index, dwell});
        }
      }
      for (const RingAccess& a : access) {
        const EdgeServer& server = topology.servers[a.server_id];
        const int b = std::min(b_star, server.bandwidth_units);
        const int c = std::min(c_star, server.computing_units);
        const double rate = b * *server.find_ring(a.ring_index)->per_bu_rate;
        const double t = compute_offload_time(job.input_size_mb, rate) +
                         table_for(app, a.server_id)[c - 1];
        if (t <= a.dwell_time) best_time = std::min(best_time, t);
      }
    }
    if (!std::isfinite(best_time))
      throw ConfigError("workload: job " + std::to_string(j) + " found no feasible ring after " +
                        std::to_string(cfg.max_resample) + " vehicle draws");

    job.deadline = best_time * slack;
    job.accessible_rings = access;
    std::set<int> servers;
    for (const RingAccess& a : access) servers.insert(a.server_id);
    for (int k : servers) job.processing_times.push_back({k, table_for(app, k)});
    out.jobs.push_back(std::move(job));
  }
  return out;
}

SynthesizedProblem synthesize_problem(const WorkloadConfig& cfg, std::uint64_t jobset_seed) {
  cfg.validate();
  Rng topo_rng(cfg.topology_seed);
  Topology topology = build_topology(cfg, topo_rng);
  std::unique_ptr<MobilitySource> mobility;
  if (cfg.trace_path) {
    mobility = std::make_unique<TraceMobility>(load_trace(*cfg.trace_path));
  } else {
    mobility = std::make_unique<SyntheticMobility>(
        cfg.area_side_m, topology.road_xs, topology.road_ys, cfg.n_vehicles, cfg.speed_range.lo,
        cfg.speed_range.hi, cfg.time_window_s, topo_rng);
  }
  std::optional<ProfileTable> profiles;
  if (cfg.profile_path) profiles = load_profile(*cfg.profile_path);

  Rng rng(jobset_seed);
  Jobset jobset = synthesize_jobset(cfg, topology, *mobility, rng, profiles ? &*profiles : nullptr);
  SynthesizedProblem out{Problem(topology.servers, std::move(jobset.jobs), ChannelEnv{}),
                         jobset.ru_b, jobset.ru_c};
  return out;
}

}  // namespace mec
