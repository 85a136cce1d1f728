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

#include "dmtcsit/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace dmtcsit {

ChannelConfig::ChannelConfig(int m_tx, int n_rx, double alpha,
                             std::optional<int> block_len)
    : m_tx_(m_tx), n_rx_(n_rx), alpha_(alpha), block_len_(block_len) {
  if (m_tx < 1 || n_rx < 1)
    throw std::invalid_argument("antenna counts must be positive");
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("CSIT quality alpha must be a finite value >= 0");
  if (n_rx_ > m_tx_) std::swap(m_tx_, n_rx_);
  if (block_len_ && *block_len_ < m_tx_ + n_rx_ - 1)
    throw std::invalid_argument("block length must be at least M+N-1, got " +
                                std::to_string(*block_len_));
}

double error_variance(const ChannelConfig& cfg, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw std::invalid_argument("SNR rho must be positive and finite");
  return std::pow(rho, -cfg.alpha());
}

namespace {

// CN(0, variance): real and imaginary parts each carry variance / 2.
void fill_complex_gaussian(ComplexMatrix& m, double variance, Engine& engine) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(variance / 2.0));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double re = gauss(engine);
      const double im = gauss(engine);
      m(i, j) = {re, im};
    }
}

}  // namespace

ChannelDraw sample_channel(const ChannelConfig& cfg, double rho, Engine& engine) {
  ChannelDraw draw;
  draw.sigma_e_sq = error_variance(cfg, rho);
  draw.h.resize(cfg.n_rx(), cfg.m_tx());
  draw.e.resize(cfg.n_rx(), cfg.m_tx());
  fill_complex_gaussian(draw.h, 1.0, engine);
  fill_complex_gaussian(draw.e, draw.sigma_e_sq, engine);
  return draw;
}

ChannelDraw sample_channel(const ChannelConfig& cfg, double rho, std::uint64_t seed) {
  Engine engine = make_engine(seed);
  return sample_channel(cfg, rho, engine);
}

std::vector<double> eig_ascending(const ComplexMatrix& m) {
  if (!m.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
  const Eigen::Index n = m.rows();
  std::vector<double> values(static_cast<std::size_t>(n));
  if (n == 0) return values;
  if (n == 1) {
    values[0] = m.row(0).squaredNorm();
    return values;
  }
  const ComplexMatrix gram = m * m.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("Hermitian eigensolver did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();  // ascending
  for (Eigen::Index i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = std::max(0.0, ev(i));
  std::sort(values.begin(), values.end());
  return values;
}

EigenTriple eigen_triple(const ChannelDraw& draw) {
  return {eig_ascending(draw.h), eig_ascending(draw.estimate()), eig_ascending(draw.e)};
}

bool check_lemma1(const EigenTriple& t) {
  if (t.a.size() != t.b.size() || t.b.size() != t.c.size())
    throw std::invalid_argument("eigenvalue vectors have mismatched lengths");
  if (t.a.empty()) return true;
  const double c_max = t.c.back();
  const double eps = 1e-9 * std::max(1.0, t.b.back());
  for (std::size_t n = 0; n < t.b.size(); ++n)
    if (t.b[n] > 2.0 * (t.a[n] + c_max) + eps) return false;
  return true;
}

double wishart_log_norm_const(int m, int n) {
  if (n < 1 || m < n) throw std::invalid_argument("need m >= n >= 1");
  double log_xi = 0.0;
  for (int i = 1; i <= n; ++i) log_xi += std::lgamma(m - i + 1.0) + std::lgamma(n - i + 1.0);
  return log_xi;
}

}  // namespace dmtcsit
