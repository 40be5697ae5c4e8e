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

#include <algorithm>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "mec/exact.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

namespace mec {
namespace {

using testing::hand_pool;

struct NineCase {
  Problem problem = testing::frame_problem({{1, 2, 2}}, {1, 2});
  InstancePool pool =
      hand_pool(problem, {{1, 1, 1, 1, 5.0}, {1, 1, 2, 2, 7.0}, {2, 1, 1, 1, 4.0}});
};

TEST(Exact, HandExample) {
  const NineCase c;
  const ExactResult r = exact_opt(c.pool, c.problem);
  EXPECT_EQ(r.status, ExactStatus::kOptimal);
  EXPECT_EQ(r.solution.total_utility(), 9.0);
  std::vector<InstanceId> ids = r.solution.selected();
  std::sort(ids.begin(), ids.end());
  EXPECT_EQ(ids, (std::vector<InstanceId>{0, 2}));
  EXPECT_EQ(exhaustive_opt(c.pool, c.problem).total_utility(), 9.0);
}

TEST(Exact, EmptyAndSingleton) {
  const Problem problem = testing::frame_problem({{1, 2, 2}}, {1});
  EXPECT_EQ(exact_opt(hand_pool(problem, {}), problem).solution.total_utility(), 0.0);
  EXPECT_EQ(exhaustive_opt(hand_pool(problem, {}), problem).total_utility(), 0.0);
  const InstancePool one = hand_pool(problem, {{1, 1, 2, 1, 3.5}});
  EXPECT_EQ(exhaustive_opt(one, problem).selected(), (std::vector<InstanceId>{0}));
  EXPECT_EQ(exact_opt(one, problem).solution.selected(), (std::vector<InstanceId>{0}));
}

TEST(Exact, ExhaustiveRefusesLargePools) {
  const Problem problem = testing::frame_problem({{1, 6, 6}}, {1});
  std::vector<testing::HandInstance> many;
  for (int b = 1; b <= 6; ++b)
    for (int c = 1; c <= 6; ++c) many.push_back({1, 1, b, c, 1.0 * b * c});
  EXPECT_THROW(exhaustive_opt(hand_pool(problem, many), problem), std::length_error);
}

TEST(Exact, AgreesWithBothOracles) {
  testing::Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const testing::SmallCase c = testing::draw_small_case(rng, 20);
    BnBConfig unlimited;
    unlimited.timeout = 0.0;
    const ExactResult r = exact_opt(c.pool, c.problem, unlimited);
    const double brute = exhaustive_opt(c.pool, c.problem).total_utility();
    const double oracle = testing::oracle_optimum(c.pool, c.problem);
    EXPECT_EQ(r.status, ExactStatus::kOptimal);
    EXPECT_NEAR(r.solution.total_utility(), brute, 1e-9 * std::max(1.0, brute));
    EXPECT_NEAR(oracle, brute, 1e-9 * std::max(1.0, brute));
    EXPECT_TRUE(testing::oracle_violations(r.solution, c.pool, c.problem).empty());
  }
}

// Best completion of a node by brute force over the open jobs.
double residual_optimum(const BnBNode& node, const InstancePool& pool, const Problem& problem) {
  std::vector<int> bu(problem.num_servers()), cu(problem.num_servers());
  for (int k = 0; k < problem.num_servers(); ++k) {
    bu[k] = problem.servers()[k].bandwidth_units;
    cu[k] = problem.servers()[k].computing_units;
  }
  for (InstanceId id : node.selected) {
    bu[pool[id].server_index] -= pool[id].bu_alloc;
    cu[pool[id].server_index] -= pool[id].cu_alloc;
  }
  std::vector<int> jobs(node.remaining_jobs.begin(), node.remaining_jobs.end());
  double best = 0.0;
  auto visit = [&](auto&& self, std::size_t i, double value) -> void {
    best = std::max(best, value);
    if (i == jobs.size()) return;
    self(self, i + 1, value);
    for (InstanceId id : pool.job_instances(jobs[i])) {
      const auto& inst = pool[id];
      if (inst.bu_alloc > bu[inst.server_index] || inst.cu_alloc > cu[inst.server_index]) continue;
      bu[inst.server_index] -= inst.bu_alloc;
      cu[inst.server_index] -= inst.cu_alloc;
      self(self, i + 1, value + inst.utility);
      bu[inst.server_index] += inst.bu_alloc;
      cu[inst.server_index] += inst.cu_alloc;
    }
  };
  visit(visit, 0, 0.0);
  return best;
}

TEST(Exact, NodeBoundsAreAdmissible) {
  testing::Rng rng(37);
  int nodes_checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const testing::SmallCase c = testing::draw_small_case(rng, 20);
    BnBConfig cfg;
    cfg.timeout = 0.0;
    cfg.node_observer = [&](const BnBNode& node) {
      ++nodes_checked;
      double used = 0.0;
      for (InstanceId id : node.selected) used += c.pool[id].utility;
      EXPECT_NEAR(node.current_utility, used, 1e-9 * std::max(1.0, used));
      const double best = residual_optimum(node, c.pool, c.problem);
      EXPECT_GE(node.bound, best - 1e-9 * std::max(1.0, best));
    };
    exact_opt(c.pool, c.problem, cfg);
  }
  EXPECT_GT(nodes_checked, 0);
}

TEST(Exact, NodeLimitReportsTheIncumbent) {
  testing::Rng rng(41);
  testing::SmallProblemOptions big;
  big.max_jobs = 30;
  big.max_servers = 3;
  big.max_units = 8;
  bool saw_limit = false;
  for (int trial = 0; trial < 30 && !saw_limit; ++trial) {
    const Problem problem = testing::random_small_problem(rng, big);
    const InstancePool pool = enumerate_instances(problem);
    BnBConfig cfg;
    cfg.node_limit = 1;
    const ExactResult r = exact_opt(pool, problem, cfg);
    EXPECT_TRUE(testing::oracle_violations(r.solution, pool, problem).empty());
    if (r.status == ExactStatus::kTimeoutIncumbent) {
      saw_limit = true;
      const ExactResult full = exact_opt(pool, problem);
      EXPECT_LE(r.solution.total_utility(), full.solution.total_utility() + 1e-9);
    }
  }
  EXPECT_TRUE(saw_limit);
  EXPECT_EQ(to_string(ExactStatus::kOptimal), "optimal");
}

TEST(WriteLp, Format) {
  const NineCase c;
  std::ostringstream out;
  write_lp(out, c.pool, c.problem);
  const std::string lp = out.str();
  EXPECT_NE(lp.find("Maximize\n obj: 5 x0 + 7 x1 + 4 x2\n"), std::string::npos) << lp;
  EXPECT_NE(lp.find(" bu_1: 1 x0 + 2 x1 + 1 x2 <= 2\n"), std::string::npos) << lp;
  EXPECT_NE(lp.find(" cu_1: 1 x0 + 2 x1 + 1 x2 <= 2\n"), std::string::npos) << lp;
  EXPECT_NE(lp.find(" job_1: 1 x0 + 1 x1 <= 1\n"), std::string::npos) << lp;
  EXPECT_NE(lp.find(" job_2: 1 x2 <= 1\n"), std::string::npos) << lp;
  EXPECT_NE(lp.find("Binary\n x0\n x1\n x2\nEnd\n"), std::string::npos) << lp;
}

}  // namespace
}  // namespace mec
