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

#include "mec/problem_io.hpp"

#include <fstream>
#include <iomanip>

namespace mec {

using nlohmann::json;

namespace {

template <typename T>
T required(const json& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key))
    throw ConfigError(std::string(where) + ": missing member \"" + key + "\"");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(where) + ": member \"" + key + "\" has the wrong type");
  }
}

template <typename T>
std::optional<T> optional_member(const json& obj, const char* key, const char* where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return required<T>(obj, key, where);
}

template <typename T>
void put_optional(json& obj, const char* key, const std::optional<T>& v) {
  if (v) obj[key] = *v;
}

json ring_to_json(const NetworkRing& r) {
  json out = {{"ring_index", r.ring_index}};
  put_optional(out, "channel_gain", r.channel_gain);
  put_optional(out, "per_bu_rate", r.per_bu_rate);
  put_optional(out, "inner_radius", r.inner_radius);
  put_optional(out, "outer_radius", r.outer_radius);
  return out;
}

NetworkRing ring_from_json(const json& j) {
  NetworkRing r;
  r.ring_index = required<int>(j, "ring_index", "ring");
  r.channel_gain = optional_member<double>(j, "channel_gain", "ring");
  r.per_bu_rate = optional_member<double>(j, "per_bu_rate", "ring");
  r.inner_radius = optional_member<double>(j, "inner_radius", "ring");
  r.outer_radius = optional_member<double>(j, "outer_radius", "ring");
  return r;
}

json penalty_to_json(const PenaltyShape& p) {
  if (p.kind == PenaltyShape::Kind::kLinearDecreasing) return {{"kind", "linear_decreasing"}};
  json levels = json::array();
  for (const auto& l : p.step_levels) levels.push_back({l.time_fraction, l.utility_fraction});
  return {{"kind", "step"}, {"step_levels", levels}};
}

PenaltyShape penalty_from_json(const json& j) {
  PenaltyShape p;
  const auto kind = required<std::string>(j, "kind", "penalty");
  if (kind == "linear_decreasing") {
    p.kind = PenaltyShape::Kind::kLinearDecreasing;
  } else if (kind == "step") {
    p.kind = PenaltyShape::Kind::kStep;
    for (const auto& level : required<json>(j, "step_levels", "penalty")) {
      if (!level.is_array() || level.size() != 2)
        throw ConfigError("penalty: step levels are [time_fraction, utility_fraction] pairs");
      p.step_levels.push_back({level[0].get<double>(), level[1].get<double>()});
    }
  } else {
    throw ConfigError("penalty: unknown kind \"" + kind + "\"");
  }
  return p;
}

json job_to_json(const Job& job) {
  json rings = json::array();
  for (const auto& a : job.accessible_rings)
    rings.push_back(
        {{"server_id", a.server_id}, {"ring_index", a.ring_index}, {"dwell_time", a.dwell_time}});
  json profiles = json::array();
  for (const auto& p : job.processing_times)
    profiles.push_back({{"server_id", p.server_id}, {"seconds", p.seconds}});
  json out = {{"job_id", job.job_id},
              {"input_size_mb", job.input_size_mb},
              {"deadline", job.deadline},
              {"tolerance_factor", job.tolerance_factor},
              {"full_utility", job.full_utility},
              {"accessible_rings", rings},
              {"processing_times", profiles},
              {"penalty", penalty_to_json(job.penalty)}};
  put_optional(out, "offload_power", job.offload_power);
  return out;
}

Job job_from_json(const json& j) {
  Job job;
  job.job_id = required<int>(j, "job_id", "job");
  job.input_size_mb = required<double>(j, "input_size_mb", "job");
  job.deadline = required<double>(j, "deadline", "job");
  job.tolerance_factor = required<double>(j, "tolerance_factor", "job");
  job.full_utility = required<double>(j, "full_utility", "job");
  job.offload_power = optional_member<double>(j, "offload_power", "job");
  for (const auto& a : required<json>(j, "accessible_rings", "job"))
    job.accessible_rings.push_back({required<int>(a, "server_id", "accessible_ring"),
                                    required<int>(a, "ring_index", "accessible_ring"),
                                    required<double>(a, "dwell_time", "accessible_ring")});
  for (const auto& p : required<json>(j, "processing_times", "job"))
    job.processing_times.push_back(
        {required<int>(p, "server_id", "processing_times"),
         required<std::vector<double>>(p, "seconds", "processing_times")});
  if (j.contains("penalty")) job.penalty = penalty_from_json(j.at("penalty"));
  return job;
}

}  // namespace

json problem_to_json(const Problem& problem) {
  json servers = json::array();
  for (const auto& s : problem.servers()) {
    json rings = json::array();
    for (const auto& r : s.rings) rings.push_back(ring_to_json(r));
    servers.push_back({{"server_id", s.server_id},
                       {"bandwidth_units", s.bandwidth_units},
                       {"bu_size_mhz", s.bu_size_mhz},
                       {"computing_units", s.computing_units},
                       {"rings", rings}});
  }
  json jobs = json::array();
  for (const auto& j : problem.jobs()) jobs.push_back(job_to_json(j));
  json channel = {{"noise_spectral_density", problem.channel().noise_spectral_density}};
  put_optional(channel, "default_offload_power", problem.channel().default_offload_power);
  return {{"servers", servers}, {"jobs", jobs}, {"channel_env", channel}};
}

Problem problem_from_json(const json& doc) {
  std::vector<EdgeServer> servers;
  for (const auto& s : required<json>(doc, "servers", "problem")) {
    EdgeServer server;
    server.server_id = required<int>(s, "server_id", "server");
    server.bandwidth_units = required<int>(s, "bandwidth_units", "server");
    server.bu_size_mhz = required<double>(s, "bu_size_mhz", "server");
    server.computing_units = required<int>(s, "computing_units", "server");
    for (const auto& r : required<json>(s, "rings", "server")) server.rings.push_back(ring_from_json(r));
    servers.push_back(std::move(server));
  }
  std::vector<Job> jobs;
  for (const auto& j : required<json>(doc, "jobs", "problem")) jobs.push_back(job_from_json(j));
  ChannelEnv channel;
  if (doc.contains("channel_env")) {
    const json& c = doc.at("channel_env");
    channel.noise_spectral_density = required<double>(c, "noise_spectral_density", "channel_env");
    channel.default_offload_power = optional_member<double>(c, "default_offload_power", "channel_env");
  } else {
    throw ConfigError("problem: missing member \"channel_env\"");
  }
  return Problem(std::move(servers), std::move(jobs), channel);
}

Problem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open problem file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError("problem file " + path.string() + ": " + e.what());
  }
  return problem_from_json(doc);
}

void save_problem(const Problem& problem, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write problem file " + path.string());
  out << std::setw(1) << problem_to_json(problem) << '\n';
}

}  // namespace mec
