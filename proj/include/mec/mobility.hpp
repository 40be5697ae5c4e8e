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

// Vehicle positions over time, either from a recorded trace or from a
// synthetic constant-velocity road-grid model, and ring dwell geometry.

#ifndef MEC_MOBILITY_HPP_
#define MEC_MOBILITY_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mec/randfixedsum.hpp"

namespace mec {

struct VehicleState {
  int vehicle_id = 0;
  double x = 0.0;  // meters
  double y = 0.0;
  double vx = 0.0;  // meters per second
  double vy = 0.0;
};

class MobilitySource {
 public:
  virtual ~MobilitySource() = default;

  virtual double start_time() const = 0;
  virtual double end_time() const = 0;
  // Vehicles with a known position at t, ordered by vehicle id.
  virtual std::vector<VehicleState> active_at(double t) const = 0;
  virtual std::optional<VehicleState> state(int vehicle_id, double t) const = 0;
};

// Vehicles drive at constant speed along axis-aligned roads and wrap
// around the square area [0, side) x [0, side).
class SyntheticMobility : public MobilitySource {
 public:
  struct Vehicle {
    bool vertical = true;  // drives along x = road, else along y = road
    double road = 0.0;
    double offset = 0.0;   // position along the road at t = 0
    double velocity = 0.0; // signed
  };

  SyntheticMobility(double area_side_m, const std::vector<double>& road_xs,
                    const std::vector<double>& road_ys, int n_vehicles, double min_speed,
                    double max_speed, double duration_s, Rng& rng);

  double start_time() const override { return 0.0; }
  double end_time() const override { return duration_; }
  std::vector<VehicleState> active_at(double t) const override;
  std::optional<VehicleState> state(int vehicle_id, double t) const override;

  const std::vector<Vehicle>& vehicles() const { return vehicles_; }

 private:
  VehicleState at(int vehicle_id, double t) const;

  double side_;
  double duration_;
  std::vector<Vehicle> vehicles_;
};

// Piecewise-linear interpolation between timestamped samples; a vehicle is
// active between its first and last sample.
class TraceMobility : public MobilitySource {
 public:
  struct Sample {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
  };

  // Samples per vehicle need not be sorted; duplicate timestamps are an error.
  explicit TraceMobility(std::map<int, std::vector<Sample>> samples);

  double start_time() const override { return start_; }
  double end_time() const override { return end_; }
  std::vector<VehicleState> active_at(double t) const override;
  std::optional<VehicleState> state(int vehicle_id, double t) const override;

 private:
  std::map<int, std::vector<Sample>> samples_;
  double start_ = 0.0;
  double end_ = 0.0;
};

// Reads a CSV with header vehicle_id,timestamp_s,x_m,y_m. Throws
// ConfigError naming the line for malformed rows.
TraceMobility load_trace(const std::string& path);
TraceMobility parse_trace(const std::string& text, const std::string& source_name = "trace");

// Time until a vehicle at offset (dx, dy) from the server, moving at
// (vx, vy), leaves the annulus inner <= d < outer along a straight line,
// capped at horizon. Zero when the vehicle is not inside the annulus.
double ring_dwell_time(double dx, double dy, double vx, double vy, double inner_radius,
                       double outer_radius, double horizon);

}  // namespace mec

#endif  // MEC_MOBILITY_HPP_
