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

#include "mec/mobility.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "mec/model.hpp"

namespace mec {

namespace {

double wrap(double v, double side) {
  double r = std::fmod(v, side);
  if (r < 0.0) r += side;
  return r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

SyntheticMobility::SyntheticMobility(double area_side_m, const std::vector<double>& road_xs,
                                     const std::vector<double>& road_ys, int n_vehicles,
                                     double min_speed, double max_speed, double duration_s,
                                     Rng& rng)
    : side_(area_side_m), duration_(duration_s) {
  if (!(area_side_m > 0.0)) throw ConfigError("mobility: area side must be positive");
  if (road_xs.empty() && road_ys.empty()) throw ConfigError("mobility: no roads");
  if (n_vehicles < 1) throw ConfigError("mobility: need at least one vehicle");
  if (!(0.0 <= min_speed && min_speed <= max_speed))
    throw ConfigError("mobility: invalid speed range");
  if (!(duration_s > 0.0)) throw ConfigError("mobility: duration must be positive");

  const std::size_t n_roads = road_xs.size() + road_ys.size();
  std::uniform_int_distribution<std::size_t> pick_road(0, n_roads - 1);
  std::uniform_real_distribution<double> offset(0.0, area_side_m);
  std::uniform_real_distribution<double> speed(min_speed, max_speed);
  std::bernoulli_distribution forward(0.5);
  vehicles_.reserve(n_vehicles);
  for (int v = 0; v < n_vehicles; ++v) {
    Vehicle vehicle;
    const std::size_t r = pick_road(rng);
    vehicle.vertical = r < road_xs.size();
    vehicle.road = vehicle.vertical ? road_xs[r] : road_ys[r - road_xs.size()];
    vehicle.offset = offset(rng);
    const double s = speed(rng);
    vehicle.velocity = forward(rng) ? s : -s;
    vehicles_.push_back(vehicle);
  }
}

VehicleState SyntheticMobility::at(int vehicle_id, double t) const {
  const Vehicle& v = vehicles_[vehicle_id];
  const double along = wrap(v.offset + v.velocity * t, side_);
  VehicleState s;
  s.vehicle_id = vehicle_id;
  if (v.vertical) {
    s.x = v.road;
    s.y = along;
    s.vy = v.velocity;
  } else {
    s.x = along;
    s.y = v.road;
    s.vx = v.velocity;
  }
  return s;
}

std::vector<VehicleState> SyntheticMobility::active_at(double t) const {
  std::vector<VehicleState> out;
  if (t < 0.0 || t > duration_) return out;
  out.reserve(vehicles_.size());
  for (int id = 0; id < static_cast<int>(vehicles_.size()); ++id) out.push_back(at(id, t));
  return out;
}

std::optional<VehicleState> SyntheticMobility::state(int vehicle_id, double t) const {
  if (vehicle_id < 0 || vehicle_id >= static_cast<int>(vehicles_.size())) return std::nullopt;
  if (t < 0.0 || t > duration_) return std::nullopt;
  return at(vehicle_id, t);
}

TraceMobility::TraceMobility(std::map<int, std::vector<Sample>> samples)
    : samples_(std::move(samples)) {
  bool first = true;
  for (auto& [id, list] : samples_) {
    if (list.empty()) throw ConfigError("trace: vehicle " + std::to_string(id) + " has no samples");
    std::sort(list.begin(), list.end(), [](const Sample& a, const Sample& b) { return a.t < b.t; });
    for (std::size_t i = 1; i < list.size(); ++i)
      if (list[i].t == list[i - 1].t)
        throw ConfigError("trace: vehicle " + std::to_string(id) + " has duplicate timestamp " +
                          std::to_string(list[i].t));
    start_ = first ? list.front().t : std::min(start_, list.front().t);
    end_ = first ? list.back().t : std::max(end_, list.back().t);
    first = false;
  }
}

std::optional<VehicleState> TraceMobility::state(int vehicle_id, double t) const {
  const auto it = samples_.find(vehicle_id);
  if (it == samples_.end()) return std::nullopt;
  const std::vector<Sample>& list = it->second;
  if (t < list.front().t || t > list.back().t) return std::nullopt;
  VehicleState s;
  s.vehicle_id = vehicle_id;
  if (list.size() == 1) {
    s.x = list.front().x;
    s.y = list.front().y;
    return s;
  }
  // Segment [a, b] with a.t <= t <= b.t; the last sample uses the final segment.
  auto upper = std::upper_bound(list.begin(), list.end(), t,
                                [](double value, const Sample& x) { return value < x.t; });
  if (upper == list.end()) --upper;
  const Sample& b = *upper;
  const Sample& a = *(upper - 1);
  const double dt = b.t - a.t;
  s.vx = (b.x - a.x) / dt;
  s.vy = (b.y - a.y) / dt;
  s.x = a.x + s.vx * (t - a.t);
  s.y = a.y + s.vy * (t - a.t);
  return s;
}

std::vector<VehicleState> TraceMobility::active_at(double t) const {
  std::vector<VehicleState> out;
  for (const auto& entry : samples_)
    if (auto s = state(entry.first, t)) out.push_back(*s);
  return out;
}

TraceMobility parse_trace(const std::string& text, const std::string& source_name) {
  std::map<int, std::vector<TraceMobility::Sample>> samples;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    auto fail = [&](const std::string& what) {
      throw ConfigError(source_name + ":" + std::to_string(line_no) + ": " + what);
    };
    if (!header_seen) {
      header_seen = true;
      if (fields.size() == 4 && fields[0] == "vehicle_id") {
        if (fields[1] != "timestamp_s" || fields[2] != "x_m" || fields[3] != "y_m")
          fail("expected header vehicle_id,timestamp_s,x_m,y_m");
        continue;
      }
    }
    if (fields.size() != 4) fail("expected 4 fields, got " + std::to_string(fields.size()));
    int id = 0;
    TraceMobility::Sample s;
    if (!parse_number(fields[0], id)) fail("bad vehicle_id '" + std::string(fields[0]) + "'");
    if (!parse_number(fields[1], s.t) || !std::isfinite(s.t))
      fail("bad timestamp_s '" + std::string(fields[1]) + "'");
    if (!parse_number(fields[2], s.x) || !std::isfinite(s.x))
      fail("bad x_m '" + std::string(fields[2]) + "'");
    if (!parse_number(fields[3], s.y) || !std::isfinite(s.y))
      fail("bad y_m '" + std::string(fields[3]) + "'");
    samples[id].push_back(s);
  }
  if (samples.empty()) throw ConfigError(source_name + ": no samples");
  return TraceMobility(std::move(samples));
}

TraceMobility load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open trace file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_trace(buffer.str(), path);
}

double ring_dwell_time(double dx, double dy, double vx, double vy, double inner_radius,
                       double outer_radius, double horizon) {
  const double d2 = dx * dx + dy * dy;
  const double d = std::sqrt(d2);
  if (d < inner_radius || d >= outer_radius) return 0.0;
  const double a = vx * vx + vy * vy;
  if (a == 0.0) return horizon;
  const double b = 2.0 * (dx * vx + dy * vy);

  // |p + v t| = R. Inside the outer circle the larger root is the exit.
  const double c_out = d2 - outer_radius * outer_radius;
  double exit = (-b + std::sqrt(b * b - 4.0 * a * c_out)) / (2.0 * a);

  if (inner_radius > 0.0) {
    const double c_in = d2 - inner_radius * inner_radius;
    const double disc = b * b - 4.0 * a * c_in;
    if (disc >= 0.0 && b < 0.0) {
      const double hit = (-b - std::sqrt(disc)) / (2.0 * a);
      exit = std::min(exit, std::max(hit, 0.0));
    }
  }
  return std::min(std::max(exit, 0.0), horizon);
}

}  // namespace mec
