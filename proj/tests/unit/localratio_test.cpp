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
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "mec/exact.hpp"
#include "mec/localratio.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

namespace mec {
namespace {

using testing::hand_pool;

// Servers sized so b/B and c/C hit the normalized values used below.
Problem pivot_frame() { return testing::frame_problem({{1, 20, 20}, {2, 20, 20}}, {1, 2, 3, 4}); }

TEST(SelectPivot, LightBeforeHeavySmallestMax) {
  const Problem problem = pivot_frame();
  const InstancePool pool = hand_pool(problem, {{1, 1, 2, 4, 5.0},    // (.1, .2) light
                                                {2, 1, 6, 1, 5.0},    // (.3, .05) light
                                                {3, 2, 12, 2, 9.0}});  // (.6, .1) heavy
  const std::vector<double> w = {5.0, 5.0, 9.0};
  const std::vector<InstanceId> live = {0, 1, 2};
  EXPECT_EQ(select_pivot(live, w, pool), 0);
}

TEST(SelectPivot, HeaviesOnly) {
  const Problem problem = pivot_frame();
  const InstancePool pool = hand_pool(problem, {{1, 1, 12, 2, 5.0}, {2, 1, 11, 18, 5.0}});
  const std::vector<double> w = {5.0, 5.0};
  const std::vector<InstanceId> live = {1, 0};
  EXPECT_EQ(select_pivot(live, w, pool), 0);
}

TEST(SelectPivot, SingletonAndEmpty) {
  const Problem problem = pivot_frame();
  const InstancePool pool = hand_pool(problem, {{1, 1, 20, 20, 5.0}});
  const std::vector<double> w = {5.0};
  const std::vector<InstanceId> one = {0};
  EXPECT_EQ(select_pivot(one, w, pool), 0);
  EXPECT_THROW(select_pivot(std::span<const InstanceId>(), w, pool), std::invalid_argument);
}

TEST(SelectPivot, TiesPreferLargerWeightThenSmallerId) {
  const Problem problem = pivot_frame();
  const InstancePool pool = hand_pool(problem, {{1, 1, 4, 4, 3.0}, {2, 1, 4, 4, 7.0},
                                                {3, 2, 4, 4, 7.0}});
  const std::vector<double> w = {3.0, 7.0, 7.0};
  const std::vector<InstanceId> live = {2, 0, 1};
  EXPECT_EQ(select_pivot(live, w, pool), 1);
}

TEST(Decompose, ThreeCases) {
  const Problem problem = testing::frame_problem({{1, 4, 4}, {2, 4, 4}}, {1, 2, 3});
  const InstancePool pool = hand_pool(problem, {{1, 1, 2, 2, 10.0},    // pivot
                                                {1, 2, 1, 1, 14.0},    // same job
                                                {2, 1, 1, 1, 8.0},     // same server
                                                {3, 2, 3, 3, 4.0}});   // neither
  const std::vector<double> w = {10.0, 14.0, 8.0, 4.0};
  const std::vector<InstanceId> live = {0, 1, 2, 3};
  const Decomposition d = decompose(w, 0, live, pool);
  EXPECT_EQ(d.w1[0], 10.0);
  EXPECT_EQ(d.w2[0], 0.0);
  EXPECT_EQ(d.w1[1], 10.0);
  EXPECT_EQ(d.w2[1], 4.0);
  EXPECT_EQ(d.w1[2], 5.0);  // 10 * (0.25 + 0.25)
  EXPECT_EQ(d.w2[2], 3.0);
  EXPECT_EQ(d.w1[3], 0.0);
  EXPECT_EQ(d.w2[3], 4.0);
}

TEST(IdAssign, HandTraceTwoHeavyJobs) {
  const Problem problem = testing::frame_problem({{1, 2, 2}}, {1, 2});
  const InstancePool pool = hand_pool(problem, {{1, 1, 2, 2, 10.0}, {2, 1, 2, 2, 6.0}});
  const IdAssignResult r = idassign_traced(pool, problem);
  ASSERT_EQ(r.layers.size(), 1u);
  EXPECT_EQ(r.layers[0].pivot, 0);
  EXPECT_EQ(r.layers[0].pivot_weight, 10.0);
  EXPECT_FALSE(r.layers[0].pivot_light);
  EXPECT_EQ(r.solution.total_utility(), 10.0);
  EXPECT_EQ(r.solution.selected(), (std::vector<InstanceId>{0}));
}

TEST(IdAssign, EmptyPool) {
  const Problem problem = testing::frame_problem({{1, 2, 2}}, {1});
  const InstancePool pool = hand_pool(problem, {});
  EXPECT_EQ(idassign(pool, problem).total_utility(), 0.0);
  EXPECT_TRUE(idassign_traced(pool, problem).layers.empty());
}

// Records each layer and checks it against the independent w1 formula.
class CheckingObserver : public LayerObserver {
 public:
  explicit CheckingObserver(const InstancePool& pool) : pool_(pool) {}

  void on_layer(const LayerTrace& layer, std::span<const InstanceId> live,
                std::span<const double> before, std::span<const double> after) override {
    ++layers;
    bool saw_light = false;
    for (std::size_t i = 0; i < live.size(); ++i) {
      const double w1 = testing::oracle_w1(pool_[live[i]], pool_[layer.pivot], layer.pivot_weight);
      worst_identity = std::max(worst_identity,
                                std::abs(w1 + after[i] - before[i]) / std::max(1.0, std::abs(before[i])));
      EXPECT_GT(before[i], kDropEpsilon);
      if (live[i] == layer.pivot) {
        worst_pivot_residual = std::max(worst_pivot_residual, std::abs(after[i]));
        EXPECT_EQ(before[i], layer.pivot_weight);
      }
      saw_light = saw_light || pool_[live[i]].is_light();
    }
    // A heavy pivot is only allowed once no light instance is live.
    if (saw_light) {
      EXPECT_TRUE(layer.pivot_light);
    }
  }

  int layers = 0;
  double worst_identity = 0.0;
  double worst_pivot_residual = 0.0;

 private:
  const InstancePool& pool_;
};

TEST(IdAssign, EngineMatchesReferenceOnEveryKernel) {
  testing::Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const Problem problem = testing::random_small_problem(rng);
    const InstancePool pool = enumerate_instances(problem);
    const IdAssignResult ref = idassign_reference(pool, problem);
    EXPECT_LE(ref.layers.size(), pool.size());
    for (const kernels::KernelTable* k : kernels::available_kernels()) {
      CheckingObserver observer(pool);
      const IdAssignResult got = idassign_traced(pool, problem, {k, &observer});
      ASSERT_EQ(got.layers.size(), ref.layers.size()) << k->name << " trial " << trial;
      for (std::size_t i = 0; i < got.layers.size(); ++i) {
        EXPECT_EQ(got.layers[i].pivot, ref.layers[i].pivot);
        EXPECT_EQ(got.layers[i].pivot_weight, ref.layers[i].pivot_weight);
      }
      EXPECT_EQ(got.solution.selected(), ref.solution.selected());
      EXPECT_EQ(got.solution.total_utility(), ref.solution.total_utility());
      EXPECT_EQ(observer.layers, static_cast<int>(got.layers.size()));
      EXPECT_LE(observer.worst_identity, 1e-9);
      EXPECT_LE(observer.worst_pivot_residual, 1e-12);
    }
  }
}

TEST(IdAssign, SixthOfOptimumAndFeasible) {
  testing::Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const testing::SmallCase c = testing::draw_small_case(rng, 20);
    const Solution sol = idassign(c.pool, c.problem);
    EXPECT_TRUE(testing::oracle_violations(sol, c.pool, c.problem).empty());
    EXPECT_GE(sol.total_utility() * 6.0, testing::oracle_optimum(c.pool, c.problem) - 1e-9);
  }
}

TEST(IdAssign, LargerPoolsStayConsistent) {
  testing::Rng rng(17);
  testing::SmallProblemOptions big;
  big.max_jobs = 40;
  big.max_servers = 4;
  big.max_units = 10;
  for (int trial = 0; trial < 20; ++trial) {
    const Problem problem = testing::random_small_problem(rng, big);
    const InstancePool pool = enumerate_instances(problem);
    const IdAssignResult ref = idassign_reference(pool, problem);
    const IdAssignResult got = idassign_traced(pool, problem);
    EXPECT_EQ(got.solution.selected(), ref.solution.selected());
    EXPECT_TRUE(testing::oracle_violations(got.solution, pool, problem).empty());
  }
}

}  // namespace
}  // namespace mec
