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
#include <numeric>
#include <stdexcept>

#include <gtest/gtest.h>

#include "mec/randfixedsum.hpp"

namespace mec {
namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

TEST(RandFixedSum, Forced) {
  Rng rng(1);
  EXPECT_EQ(randfixedsum(1, 0.5, 0.0, 1.0, rng), (std::vector<double>{0.5}));
  EXPECT_EQ(randfixedsum(2, 1.4, 0.0, 0.7, rng), (std::vector<double>{0.7, 0.7}));
  EXPECT_EQ(randfixedsum(3, 0.6, 0.2, 0.9, rng), (std::vector<double>(3, 0.2)));
  EXPECT_EQ(randfixedsum(4, 2.0, 0.5, 0.5, rng), (std::vector<double>(4, 0.5)));
}

TEST(RandFixedSum, SmallExample) {
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto x = randfixedsum(3, 1.5, 0.4, 0.6, rng);
    ASSERT_EQ(x.size(), 3u);
    EXPECT_NEAR(sum(x), 1.5, 1e-12);
    for (double v : x) {
      EXPECT_GE(v, 0.4);
      EXPECT_LE(v, 0.6);
    }
  }
}

TEST(RandFixedSum, Infeasible) {
  Rng rng(3);
  EXPECT_THROW(randfixedsum(0, 0.0, 0.0, 1.0, rng), std::domain_error);
  EXPECT_THROW(randfixedsum(2, 0.0, 1.0, 0.5, rng), std::domain_error);
  EXPECT_THROW(randfixedsum(2, 2.5, 0.0, 1.0, rng), std::domain_error);
  EXPECT_THROW(randfixedsum(2, -0.1, 0.0, 1.0, rng), std::domain_error);
}

TEST(RandFixedSum, LargeDimensionStaysFinite) {
  Rng rng(4);
  const auto x = randfixedsum(2000, 1300.0, 0.0, 1.0, rng);
  EXPECT_NEAR(sum(x), 1300.0, 1e-9 * 1300.0);
  for (double v : x) {
    ASSERT_TRUE(std::isfinite(v));
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(RandFixedSum, ComponentsAreExchangeable) {
  // Every coordinate has mean total / n; check each within 4 standard errors.
  Rng rng(5);
  const int n = 5;
  const int draws = 20000;
  std::vector<double> mean(n, 0.0), sq(n, 0.0);
  for (int d = 0; d < draws; ++d) {
    const auto x = randfixedsum(n, 1.2, 0.0, 0.5, rng);
    for (int i = 0; i < n; ++i) {
      mean[i] += x[i];
      sq[i] += x[i] * x[i];
    }
  }
  for (int i = 0; i < n; ++i) {
    const double m = mean[i] / draws;
    const double var = sq[i] / draws - m * m;
    EXPECT_NEAR(m, 1.2 / n, 4.0 * std::sqrt(var / draws)) << "component " << i;
  }
}

TEST(RandFixedSum, SameSeedSameDraw) {
  Rng a(77), b(77);
  EXPECT_EQ(randfixedsum(9, 4.0, 0.1, 0.8, a), randfixedsum(9, 4.0, 0.1, 0.8, b));
}

}  // namespace
}  // namespace mec
