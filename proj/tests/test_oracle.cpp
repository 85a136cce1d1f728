// SPDX-License-Identifier: Apache-2.0
//
// dmtcsit: diversity-multiplexing tradeoff tools for MIMO links with imperfect CSIT
// Copyright (C) 2026 The dmtcsit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <gtest/gtest.h>

#include <cmath>

#include "dmtcsit/dmt.hpp"
#include "dmtcsit/oracle.hpp"

using namespace dmtcsit;

namespace {

std::vector<double> probes(int n, double step) {
  std::vector<double> out;
  const int count = static_cast<int>(std::lround(n / step));
  for (int i = 1; i <= count; ++i) out.push_back(std::min<double>(n, i * step));
  return out;
}

bool same_extended(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return std::isinf(a) && std::isinf(b);
  return std::abs(a - b) <= tol + 1e-9;
}

}  // namespace

TEST(OutageCondition, Examples) {
  const ChannelConfig cfg(2, 2, 0.5);
  const std::vector<double> zero{0.0, 0.0};
  const std::vector<double> deep{3.0, 3.0};
  EXPECT_FALSE(outage_condition(cfg, zero, 1.0));
  EXPECT_DOUBLE_EQ(outage_lhs(cfg, zero, cfg.alpha()), 2.0);
  EXPECT_TRUE(outage_condition(cfg, deep, 1.0));
  EXPECT_DOUBLE_EQ(outage_lhs(cfg, deep, cfg.alpha()), 0.0);
  for (auto [m, n] : {std::pair{1, 1}, std::pair{3, 2}, std::pair{4, 3}}) {
    const ChannelConfig c(m, n, 0.2);
    EXPECT_TRUE(outage_condition(c, std::vector<double>(n, 0.0), n + 0.1));
  }
  EXPECT_THROW(outage_condition(cfg, std::vector<double>{0.0, 1.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(outage_condition(cfg, std::vector<double>{1.0, -0.5}, 1.0), std::invalid_argument);
}

TEST(Objective, WeightsAndTolerance) {
  const ChannelConfig cfg(4, 2, 0.1);
  EXPECT_DOUBLE_EQ(exponent_objective(cfg, std::vector<double>{1.0, 0.5}), 3.0 + 2.5);
  EXPECT_DOUBLE_EQ(oracle_tolerance(cfg, 0.02), 2 * 5 * 0.02);
  EXPECT_DOUBLE_EQ(default_v_max(ChannelConfig(2, 2, 0.5)), 4.0);
}

TEST(GridOracle, WorkedExamples) {
  const ChannelConfig cfg(2, 2, 0.5);
  EXPECT_NEAR(grid_oracle(cfg, 1.0, 4.0, 0.01).d_min, 9.0, 0.05);
  EXPECT_NEAR(grid_oracle(cfg, 2.0 - 1e-6, 4.0, 0.01).d_min, 1.0, 0.05);
  const OracleResult half = grid_oracle(cfg, 0.5, 4.0, 0.01);
  EXPECT_NEAR(half.d_min, 10.5, 0.05);
  EXPECT_NEAR(half.d_min, eval_dmt(compute_dmt_curve(cfg), 0.5), 0.05);
  ASSERT_EQ(half.argmin_v.size(), 2u);
  EXPECT_NEAR(exponent_objective(cfg, half.argmin_v), half.d_min, 1e-9);
  EXPECT_DOUBLE_EQ(half.r_probe, 0.5);
  EXPECT_DOUBLE_EQ(half.grid_step, 0.01);
  const OracleResult scalar = grid_oracle(ChannelConfig(1, 1, 0.0), 0.5, 2.0, 0.02);
  EXPECT_NEAR(scalar.d_min, 0.5, 1e-9);
}

TEST(GridOracle, RejectsBadArguments) {
  const ChannelConfig cfg(2, 2, 0.5);
  EXPECT_THROW(grid_oracle(ChannelConfig(5, 5, 0.1), 1.0, 10.0, 0.05), std::invalid_argument);
  EXPECT_THROW(grid_oracle(cfg, 1.0, 4.0, 0.1), std::invalid_argument);
  EXPECT_THROW(grid_oracle(cfg, 1.0, 3.0, 0.02), std::invalid_argument);
  EXPECT_THROW(grid_oracle(cfg, 0.0, 4.0, 0.02), std::invalid_argument);
  EXPECT_THROW(grid_oracle(cfg, 2.5, 4.0, 0.02), std::invalid_argument);
}

TEST(GridOracle, IndependentOfWorkerCount) {
  const ChannelConfig cfg(3, 3, 1.0 / 3.0);
  const auto r = probes(3, 0.25);
  const auto one = grid_oracle_sweep(cfg, r, default_v_max(cfg), 0.05, 1);
  const auto four = grid_oracle_sweep(cfg, r, default_v_max(cfg), 0.05, 4);
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].d_min, four[i].d_min);
    EXPECT_EQ(one[i].argmin_v, four[i].argmin_v);
  }
}

TEST(SubsetOracle, Examples) {
  EXPECT_NEAR(subset_oracle(ChannelConfig(2, 2, 0.5), 2, 1.5), 7.5, 1e-12);
  EXPECT_NEAR(subset_oracle(ChannelConfig(4, 2, 0.1), 1, 2.0), 1.8, 1e-12);
  EXPECT_EQ(subset_oracle(ChannelConfig(2, 2, 0.5), 1, 1.0), kInfinity);
}

TEST(SubsetOracle, AgreesWithSubsetCurvesAwayFromOnsets) {
  for (auto [m, n] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{3, 3}, std::pair{5, 3}, std::pair{4, 4}})
    for (double a : {0.0, 0.1, 0.2, 0.5}) {
      const ChannelConfig cfg(m, n, a);
      for (int k : set_A(cfg))
        for (double r : probes(n, 0.01)) {
          if (std::abs(r - outage_onset(cfg, k)) < 1e-9) continue;
          EXPECT_TRUE(same_extended(subset_oracle(cfg, k, r), dk_eval(cfg, k, r), 1e-9))
              << m << "x" << n << " alpha=" << a << " k=" << k << " r=" << r;
        }
    }
}

TEST(SubsetOracle, MinimumMatchesGridOracle) {
  const double step = 0.02;
  for (auto [m, n] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{4, 2}})
    for (double a : {0.0, 0.1, 1.0 / 3.0}) {
      const ChannelConfig cfg(m, n, a);
      const auto r = probes(n, 0.1);
      const auto grid = grid_oracle_sweep(cfg, r, default_v_max(cfg), step);
      for (std::size_t i = 0; i < r.size(); ++i) {
        double best = kInfinity;
        for (int k = 1; k <= n; ++k) best = std::min(best, subset_oracle(cfg, k, r[i]));
        EXPECT_TRUE(same_extended(best, grid[i].d_min, oracle_tolerance(cfg, step)))
            << m << "x" << n << " alpha=" << a << " r=" << r[i] << ": " << best << " vs " << grid[i].d_min;
      }
    }
}

TEST(FreeErrorExponents, NeverBeatPinnedSolution) {
  const ChannelConfig cfg(2, 2, 0.5);
  const double step = 0.05;
  for (double r : {0.5, 1.0, 1.9}) {
    const double pinned = grid_oracle(cfg, r, default_v_max(cfg), step).d_min;
    const OracleResult free = free_u_oracle(cfg, r, default_v_max(cfg), 1.0, step);
    EXPECT_GE(free.d_min, pinned - 1e-9) << "r=" << r;
    EXPECT_NEAR(free.d_min, pinned, 1e-9) << "r=" << r;
  }
}

TEST(GridOracle, EquivalentToClosedForm) {
  const double step = 0.02;
  int failures = 0;
  for (auto [m, n] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{4, 1}, std::pair{2, 2},
                      std::pair{3, 2}, std::pair{4, 2}, std::pair{3, 3}})
    for (double a : {0.0, 0.1, 1.0 / 3.0, 0.5, 1.0}) {
      const ChannelConfig cfg(m, n, a);
      const DmtCurve curve = compute_dmt_curve(cfg);
      const auto r = probes(n, 0.05);
      const auto results = grid_oracle_sweep(cfg, r, default_v_max(cfg), step);
      for (std::size_t i = 0; i < r.size(); ++i) {
        const bool ok = same_extended(results[i].d_min, eval_dmt(curve, r[i]), oracle_tolerance(cfg, step));
        if (!ok) ++failures;
        EXPECT_TRUE(ok) << m << "x" << n << " alpha=" << a << " r=" << r[i] << ": oracle "
                        << results[i].d_min << " closed form " << eval_dmt(curve, r[i]);
      }
    }
  EXPECT_EQ(failures, 0);
}
