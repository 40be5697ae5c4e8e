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

#include "mec/randfixedsum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mec {

std::vector<double> randfixedsum(int n, double total, double lo, double hi, Rng& rng) {
  if (n < 1) throw std::domain_error("randfixedsum: n must be >= 1");
  if (!(lo <= hi)) throw std::domain_error("randfixedsum: lower bound exceeds upper bound");
  const double slack = 1e-12 * std::max({1.0, std::abs(n * lo), std::abs(n * hi)});
  if (total < n * lo - slack || total > n * hi + slack)
    throw std::domain_error("randfixedsum: total outside [n*lo, n*hi]");
  if (n == 1) return {total};
  if (lo == hi || total <= n * lo) return std::vector<double>(n, lo);
  if (total >= n * hi) return std::vector<double>(n, hi);

  // Work on the unit cube: y = (x - lo) / (hi - lo), sum(y) = s.
  double s = (total - n * lo) / (hi - lo);
  const int k = std::max(std::min(static_cast<int>(std::floor(s)), n - 1), 0);
  s = std::max(std::min(s, static_cast<double>(k + 1)), static_cast<double>(k));

  std::vector<double> s1(n), s2(n);
  for (int i = 0; i < n; ++i) {
    s1[i] = s - (k - i);
    s2[i] = (k + n - i) - s;
  }

  // w[i][c] is proportional to the volume of the (i+1)-dimensional slice
  // with c unit-cube crossings; t[i][c] is the probability of the lower
  // branch. Rows are rescaled to their maximum, which leaves every t
  // unchanged and keeps large n from underflowing.
  constexpr double kTiny = std::numeric_limits<double>::denorm_min();
  std::vector<std::vector<double>> w(n, std::vector<double>(n + 1, 0.0));
  std::vector<std::vector<double>> t(n - 1, std::vector<double>(n, 0.0));
  w[0][1] = std::numeric_limits<double>::max();
  for (int i = 2; i <= n; ++i) {
    std::vector<double>& prev = w[i - 2];
    std::vector<double>& row = w[i - 1];
    double row_max = 0.0;
    for (int c = 0; c < i; ++c) {
      const double tmp1 = prev[c + 1] * s1[c] / i;
      const double tmp2 = prev[c] * s2[n - i + c] / i;
      row[c + 1] = tmp1 + tmp2;
      const double tmp3 = row[c + 1] + kTiny;
      t[i - 2][c] = s2[n - i + c] > s1[c] ? tmp2 / tmp3 : 1.0 - tmp1 / tmp3;
      row_max = std::max(row_max, row[c + 1]);
    }
    if (row_max > 0.0)
      for (int c = 1; c <= i; ++c) row[c] /= row_max;
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x(n);
  double remaining = s;
  int col = k + 1;  // 1-based column into t
  double sm = 0.0;
  double pr = 1.0;
  for (int i = n - 1; i >= 1; --i) {
    const double rt = unit(rng);
    const double rs = unit(rng);
    const int e = rt <= t[i - 1][col - 1] ? 1 : 0;
    const double sx = std::pow(rs, 1.0 / i);
    sm += (1.0 - sx) * pr * remaining / (i + 1);
    pr *= sx;
    x[n - i - 1] = sm + pr * e;
    remaining -= e;
    col -= e;
  }
  x[n - 1] = sm + pr * remaining;

  std::shuffle(x.begin(), x.end(), rng);
  for (double& v : x) v = std::clamp((hi - lo) * v + lo, lo, hi);
  return x;
}

}  // namespace mec
