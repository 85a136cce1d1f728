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

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "dmtcsit/channel.hpp"
#include "dmtcsit/rng.hpp"

using namespace dmtcsit;

namespace {

// Eigenvalues of a 2x2 Hermitian matrix from its trace and determinant.
std::vector<double> hermitian2x2_eigs(const ComplexMatrix& g) {
  const double tr = g(0, 0).real() + g(1, 1).real();
  const double det = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).real();
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  return {(tr - disc) / 2.0, (tr + disc) / 2.0};
}

}  // namespace

TEST(ChannelConfig, CanonicalizesAndValidates) {
  const ChannelConfig swapped(2, 4, 0.1);
  EXPECT_EQ(swapped.m_tx(), 4);
  EXPECT_EQ(swapped.n_rx(), 2);
  EXPECT_EQ(swapped, ChannelConfig(4, 2, 0.1));
  EXPECT_EQ(swapped.weight(1), 3);
  EXPECT_EQ(swapped.weight(2), 5);
  EXPECT_THROW(ChannelConfig(0, 1, 0.0), std::invalid_argument);
  EXPECT_THROW(ChannelConfig(2, 2, -0.1), std::invalid_argument);
  EXPECT_THROW(ChannelConfig(2, 2, std::nan("")), std::invalid_argument);
  EXPECT_THROW(ChannelConfig(3, 2, 0.0, 3), std::invalid_argument);
  EXPECT_NO_THROW(ChannelConfig(3, 2, 0.0, 4));
}

TEST(SampleChannel, ErrorVarianceFollowsCsitQuality) {
  EXPECT_DOUBLE_EQ(sample_channel(ChannelConfig(2, 2, 0.0), 100.0, 1).sigma_e_sq, 1.0);
  EXPECT_NEAR(sample_channel(ChannelConfig(4, 1, 1.0), 1000.0, 1).sigma_e_sq, 0.001, 1e-15);
  EXPECT_DOUBLE_EQ(sample_channel(ChannelConfig(2, 2, 0.7), 1.0, 1).sigma_e_sq, 1.0);
  EXPECT_THROW(sample_channel(ChannelConfig(2, 2, 0.5), 0.0, 1), std::invalid_argument);
}

TEST(SampleChannel, ShapesAndDeterminism) {
  const ChannelConfig cfg(3, 2, 0.5);
  const ChannelDraw a = sample_channel(cfg, 50.0, 99);
  const ChannelDraw b = sample_channel(cfg, 50.0, 99);
  const ChannelDraw c = sample_channel(cfg, 50.0, 100);
  EXPECT_EQ(a.h.rows(), 2);
  EXPECT_EQ(a.h.cols(), 3);
  EXPECT_EQ(a.e.rows(), 2);
  EXPECT_TRUE(a.h == b.h && a.e == b.e);
  EXPECT_FALSE(a.h == c.h);
}

TEST(SampleChannel, ComplexGaussianMoments) {
  const ChannelConfig cfg(2, 2, 1.0);
  const double rho = 4.0;
  Engine engine = make_engine(derive_seed(7, 0, 0));
  double re2 = 0.0, im2 = 0.0, re_mean = 0.0, err2 = 0.0;
  const int draws = 50000;
  for (int i = 0; i < draws; ++i) {
    const ChannelDraw d = sample_channel(cfg, rho, engine);
    for (Eigen::Index j = 0; j < d.h.size(); ++j) {
      re2 += std::norm(d.h(j).real());
      im2 += std::norm(d.h(j).imag());
      re_mean += d.h(j).real();
      err2 += std::norm(d.e(j));
    }
  }
  const double n = draws * 4.0;
  EXPECT_NEAR(re2 / n, 0.5, 0.01);
  EXPECT_NEAR(im2 / n, 0.5, 0.01);
  EXPECT_NEAR(re_mean / n, 0.0, 0.01);
  EXPECT_NEAR(err2 / n, 0.25, 0.005);
}

TEST(EigAscending, SmallCases) {
  ComplexMatrix one(1, 1);
  one(0, 0) = 1.0;
  EXPECT_EQ(eig_ascending(one), std::vector<double>{1.0});
  const std::vector<double> zeros = eig_ascending(ComplexMatrix::Zero(2, 2));
  EXPECT_EQ(zeros, (std::vector<double>{0.0, 0.0}));
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(1, 0) = std::complex<double>(std::numeric_limits<double>::infinity(), 0.0);
  EXPECT_THROW(eig_ascending(bad), std::invalid_argument);
}

TEST(EigAscending, MatchesTwoByTwoClosedForm) {
  const ChannelConfig cfg(3, 2, 0.0);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const ChannelDraw d = sample_channel(cfg, 10.0, seed);
    const auto eigs = eig_ascending(d.h);
    const auto ref = hermitian2x2_eigs(d.h * d.h.adjoint());
    ASSERT_EQ(eigs.size(), 2u);
    for (int i = 0; i < 2; ++i) EXPECT_NEAR(eigs[i], ref[i], 1e-9 * std::max(1.0, ref[i]));
    EXPECT_LE(eigs[0], eigs[1]);
  }
}

TEST(EigenvalueBound, HandExamples) {
  EXPECT_TRUE(check_lemma1({{1, 2}, {2, 4}, {0, 0}}));
  EXPECT_FALSE(check_lemma1({{0, 0}, {1, 1}, {0, 0}}));
  EXPECT_THROW(check_lemma1({{1, 2}, {2}, {0, 0}}), std::invalid_argument);
}

TEST(EigenvalueBound, HoldsOnRandomDraws) {
  std::size_t violations = 0;
  std::uint64_t seed = 0;
  for (double rho : {10.0, 100.0, 1000.0}) {
    const ChannelConfig cfg(3, 3, 0.5);
    Engine engine = make_engine(derive_seed(11, static_cast<std::uint64_t>(rho), seed++));
    for (int i = 0; i < 34000; ++i) {
      const EigenTriple t = eigen_triple(sample_channel(cfg, rho, engine));
      for (std::size_t n = 1; n < t.a.size(); ++n) ASSERT_LE(t.a[n - 1], t.a[n]);
      if (!check_lemma1(t)) ++violations;
    }
  }
  EXPECT_EQ(violations, 0u);
}

TEST(ErrorExponent, SmallestErrorEigenvalueSupport) {
  const ChannelConfig cfg(2, 2, 0.5);
  const double rho = 1e4;
  Engine engine = make_engine(derive_seed(5, 1, 0));
  int inside = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const EigenTriple t = eigen_triple(sample_channel(cfg, rho, engine));
    if (-std::log(t.c.front()) / std::log(rho) > cfg.alpha() - 0.15) ++inside;
  }
  EXPECT_GE(inside, 0.95 * draws);
}

TEST(WishartNormalizer, ClosedFormValues) {
  EXPECT_DOUBLE_EQ(wishart_log_norm_const(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(wishart_log_norm_const(2, 1), 0.0);
  EXPECT_NEAR(wishart_log_norm_const(2, 2), 0.0, 1e-12);
  EXPECT_NEAR(wishart_log_norm_const(3, 2), std::log(2.0), 1e-12);
  EXPECT_NEAR(wishart_log_norm_const(5, 3), std::log(24.0 * 2 * 6 * 1 * 2), 1e-12);
  EXPECT_THROW(wishart_log_norm_const(1, 2), std::invalid_argument);
}

// Integrates the unordered density by importance sampling from iid unit
// exponentials; dividing by N! restricts it to the ordered region.
TEST(WishartNormalizer, MonteCarloIntegration) {
  for (auto [m, n] : {std::pair{2, 2}, std::pair{3, 2}}) {
    std::mt19937_64 engine(2024);
    std::exponential_distribution<double> exp1(1.0);
    const int samples = 1000000;
    double sum = 0.0;
    std::vector<double> x(n);
    for (int s = 0; s < samples; ++s) {
      for (auto& xi : x) xi = exp1(engine);
      double term = 1.0;
      for (int i = 0; i < n; ++i) {
        term *= std::pow(x[i], m - n);
        for (int j = i + 1; j < n; ++j) term *= (x[i] - x[j]) * (x[i] - x[j]);
      }
      sum += term;
    }
    const double estimate = sum / samples / std::tgamma(n + 1.0);
    EXPECT_NEAR(estimate / std::exp(wishart_log_norm_const(m, n)), 1.0, 0.02) << m << "x" << n;
  }
}
