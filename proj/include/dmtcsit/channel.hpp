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

#ifndef DMTCSIT_CHANNEL_HPP
#define DMTCSIT_CHANNEL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dmtcsit/rng.hpp"

namespace dmtcsit {

using ComplexMatrix = Eigen::MatrixXcd;

/// Antenna configuration and CSIT quality of a quasi-static MIMO link.
///
/// The constructor canonicalizes to m_tx >= n_rx (the tradeoff is symmetric
/// in the two antenna counts), so an SIMO link 1x2 is stored as M=2, N=1.
class ChannelConfig {
 public:
  ChannelConfig() = default;
  ChannelConfig(int m_tx, int n_rx, double alpha,
                std::optional<int> block_len = std::nullopt);

  int m_tx() const { return m_tx_; }
  int n_rx() const { return n_rx_; }
  double alpha() const { return alpha_; }
  std::optional<int> block_len() const { return block_len_; }

  /// Exponent weight 2n-1+M-N of the n-th ordered eigenvalue, n = 1..N.
  int weight(int n) const { return 2 * n - 1 + m_tx_ - n_rx_; }

  friend bool operator==(const ChannelConfig&, const ChannelConfig&) = default;

 private:
  int m_tx_ = 1;
  int n_rx_ = 1;
  double alpha_ = 0.0;
  std::optional<int> block_len_;
};

/// One block of the true channel H and the transmitter-side estimation error
/// E; the estimate is H + E and is never stored.
struct ChannelDraw {
  ComplexMatrix h;  // N x M, CN(0,1) entries
  ComplexMatrix e;  // N x M, CN(0, sigma_e_sq) entries
  double sigma_e_sq = 1.0;

  ComplexMatrix estimate() const { return h + e; }
};

/// Ascending eigenvalues of HH^H (a), of the estimate's Gram matrix (b) and
/// of EE^H (c).
struct EigenTriple {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;
};

/// Error variance rho^(-alpha).
double error_variance(const ChannelConfig& cfg, double rho);

/// Draws (H, E) with a fresh engine seeded from `seed`.
ChannelDraw sample_channel(const ChannelConfig& cfg, double rho, std::uint64_t seed);

/// Same, from a caller-owned engine.
ChannelDraw sample_channel(const ChannelConfig& cfg, double rho, Engine& engine);

/// Eigenvalues of m * m^H, ascending, clamped at zero. Throws
/// std::invalid_argument on non-finite entries.
std::vector<double> eig_ascending(const ComplexMatrix& m);

EigenTriple eigen_triple(const ChannelDraw& draw);

/// b_n <= 2 (a_n + c_N) for every n, up to 1e-9 * max(1, b_N).
bool check_lemma1(const EigenTriple& t);

/// log of the ordered complex-Wishart normalizer
/// xi = prod_{i=1..n} (m-i)! (n-i)!, accumulated with lgamma.
double wishart_log_norm_const(int m, int n);

}  // namespace dmtcsit

#endif  // DMTCSIT_CHANNEL_HPP
