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

#include <cmath>

#include <gtest/gtest.h>

#include "mec/enumerate.hpp"
#include "mec/model.hpp"
#include "support/fixtures.hpp"

namespace mec {
namespace {

Job utility_job(double tolerance) {
  Job job;
  job.job_id = 1;
  job.full_utility = 40.0;
  job.deadline = 1.0;
  job.tolerance_factor = tolerance;
  return job;
}

TEST(ModelRate, DirectRateScalesWithBandwidthUnits) {
  EdgeServer server;
  NetworkRing ring;
  ring.per_bu_rate = 1.65;
  Job job;
  EXPECT_NEAR(compute_offload_rate(job, server, ring, 2, ChannelEnv{}), 3.30, 1e-12);
  for (int bu = 1; bu <= 8; ++bu) {
    EXPECT_EQ(compute_offload_rate(job, server, ring, 2 * bu, ChannelEnv{}),
              2.0 * compute_offload_rate(job, server, ring, bu, ChannelEnv{}));
  }
}

TEST(ModelRate, ShannonUnitSnr) {
  // p*h/noise = 1 and 2 MHz per BU give 2 * log2(2) = 2 Mbit/s.
  EXPECT_DOUBLE_EQ(shannon_rate_mbps(1, 2.0, 1.0, 1.0, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(shannon_rate_mbps(2, 2.0, 1.0, 1.0, 1.0), 4.0);

  EdgeServer server;
  server.bu_size_mhz = 2.0;
  NetworkRing ring;
  ring.channel_gain = 1.0;
  Job job;
  job.offload_power = 1.0;
  ChannelEnv env;
  env.noise_spectral_density = 1.0;
  EXPECT_DOUBLE_EQ(compute_offload_rate(job, server, ring, 1, env), 2.0 / kMbitPerMegabyte);
}

TEST(ModelRate, ShannonWithoutPowerIsAConfigError) {
  EdgeServer server;
  NetworkRing ring;
  ring.channel_gain = 1.0;
  Job job;
  EXPECT_THROW(compute_offload_rate(job, server, ring, 1, ChannelEnv{}), ConfigError);
}

TEST(ModelOffloadTime, Examples) {
  EXPECT_NEAR(compute_offload_time(0.33, 3.30), 0.1, 1e-12);
  EXPECT_EQ(compute_offload_time(0.0, 7.0), 0.0);
  EXPECT_NEAR(compute_offload_time(0.63, 1.15), 0.5478, 1e-4);
  EXPECT_THROW(compute_offload_time(1.0, 0.0), std::domain_error);
  EXPECT_THROW(compute_offload_time(1.0, -1.0), std::domain_error);
}

TEST(ModelUtility, ThreeCases) {
  const Job job = utility_job(2.0);
  EXPECT_EQ(compute_utility(job, 0.8), 40.0);
  EXPECT_DOUBLE_EQ(compute_utility(job, 1.5), 20.0);
  EXPECT_EQ(compute_utility(job, 2.5), 0.0);
  EXPECT_EQ(compute_utility(job, 1.0), 40.0);
}

TEST(ModelUtility, HardDeadlineDropsToZero) {
  const Job job = utility_job(1.0);
  EXPECT_EQ(compute_utility(job, 1.0), 40.0);
  EXPECT_EQ(compute_utility(job, 1.0000001), 0.0);
}

TEST(ModelUtility, StepPenalty) {
  Job job = utility_job(2.0);
  job.penalty.kind = PenaltyShape::Kind::kStep;
  job.penalty.step_levels = {{0.5, 0.8}, {1.0, 0.3}};
  EXPECT_DOUBLE_EQ(compute_utility(job, 1.25), 32.0);
  EXPECT_DOUBLE_EQ(compute_utility(job, 1.5), 32.0);
  EXPECT_DOUBLE_EQ(compute_utility(job, 1.9), 12.0);
  EXPECT_EQ(compute_utility(job, 2.1), 0.0);
}

TEST(ModelUtility, NonIncreasingInCompletionTime) {
  Job job = utility_job(2.2);
  double prev = compute_utility(job, 0.0);
  for (double t = 0.0; t < 3.0; t += 0.01) {
    const double u = compute_utility(job, t);
    EXPECT_LE(u, prev);
    EXPECT_GE(u, 0.0);
    prev = u;
  }
}

TEST(ModelFeasibility, CapacityAndOnePerJob) {
  const Problem problem = testing::frame_problem({{1, 20, 4}}, {1, 2, 3});
  const InstancePool pool = testing::hand_pool(
      problem, {{1, 1, 19, 1, 5.0}, {2, 1, 2, 1, 5.0}, {3, 1, 1, 1, 5.0}, {1, 1, 1, 1, 4.0}});
  Solution sol(problem);
  EXPECT_TRUE(check_add_feasible(sol, pool[1], problem));
  sol.add(pool[0]);
  EXPECT_FALSE(check_add_feasible(sol, pool[1], problem));  // 19 + 2 > 20
  EXPECT_TRUE(check_add_feasible(sol, pool[2], problem));
  EXPECT_FALSE(check_add_feasible(sol, pool[3], problem));  // job 1 taken
  sol.remove(pool[0]);
  EXPECT_TRUE(check_add_feasible(sol, pool[3], problem));
  EXPECT_EQ(sol.total_utility(), 0.0);
}

TEST(ModelFeasibility, UnknownIdsAreStructuralErrors) {
  const Problem problem = testing::frame_problem({{1, 2, 2}}, {1});
  AssignmentInstance stray;
  stray.job_id = 99;
  stray.server_id = 1;
  EXPECT_THROW(check_add_feasible(Solution(problem), stray, problem), StructuralError);
  EXPECT_THROW(problem.server_index(42), StructuralError);
}

TEST(ModelValidation, RejectsBrokenProblems) {
  EdgeServer server;
  server.server_id = 1;
  server.bandwidth_units = 2;
  server.computing_units = 2;
  NetworkRing ring;
  ring.per_bu_rate = 1.0;
  server.rings = {ring};
  Job job;
  job.job_id = 1;
  job.input_size_mb = 0.5;
  job.deadline = 1.0;
  job.full_utility = 5.0;
  job.accessible_rings = {{1, 1, 10.0}};
  job.processing_times = {{1, {0.5, 0.3}}};
  EXPECT_NO_THROW(Problem({server}, {job}, ChannelEnv{}));

  Job short_table = job;
  short_table.processing_times = {{1, {0.5}}};
  EXPECT_THROW(Problem({server}, {short_table}, ChannelEnv{}), ConfigError);

  Job bad_gamma = job;
  bad_gamma.tolerance_factor = 0.5;
  EXPECT_THROW(Problem({server}, {bad_gamma}, ChannelEnv{}), ConfigError);

  Job unknown_ring = job;
  unknown_ring.accessible_rings = {{1, 3, 10.0}};
  EXPECT_THROW(Problem({server}, {unknown_ring}, ChannelEnv{}), ConfigError);

  EXPECT_THROW(Problem({server, server}, {job}, ChannelEnv{}), ConfigError);
}

TEST(ModelRatio, ExactComparison) {
  EXPECT_EQ((Ratio{1, 2}), (Ratio{2, 4}));
  EXPECT_LT((Ratio{1, 3}), (Ratio{1, 2}));
}

}  // namespace
}  // namespace mec
