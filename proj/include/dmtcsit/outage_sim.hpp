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

#ifndef DMTCSIT_OUTAGE_SIM_HPP
#define DMTCSIT_OUTAGE_SIM_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dmtcsit/channel.hpp"

namespace dmtcsit {

// Monte Carlo outage simulation of the eigenvalue-product power adaptation
// P = kappa * P_bar / (prod_n b_n^(2n-1+M-N))^t, with noise power 1 so that
// the average power P_bar equals the SNR rho. Rates are r * log2(rho).

enum class KappaMode { Analytic, Calibrated };

std::string to_string(KappaMode mode);
KappaMode parse_kappa_mode(const std::string& text);

struct PowerPolicy {
  double t = 0.9;  // exponent damping, 0 <= t < 1
  KappaMode kappa_mode = KappaMode::Calibrated;
  double kappa = 1.0;  // resolved multiplier

  void validate() const;
};

/// Throws std::invalid_argument if b has the wrong length or a zero entry.
double adapted_power(const ChannelConfig& cfg, std::span<const double> b,
                     const PowerPolicy& policy, double p_bar);

/// xi_hat * prod_n (2n-1+M-N)(1-t), xi_hat = xi (1 + sigma_e^2)^(MN).
/// Exact only as rho grows.
double analytic_kappa(const ChannelConfig& cfg, double rho, double t);

struct KappaCalibration {
  double kappa = 1.0;
  double batch_mean_ratio = 1.0;  // mean(P)/P_bar on the calibration batch
  double split_half_gap = 0.0;    // |mean(1st half) - mean(2nd half)| / mean
  std::size_t batch = 0;
};

/// Calibrated mode: kappa = 1 / mean(prod b^(-w t)) over `batch` draws
/// (batch >= 10^4). Analytic mode: analytic_kappa, no sampling. t = 0 gives
/// kappa = 1 either way. A large split_half_gap flags a heavy-tailed,
/// unconverged batch mean.
KappaCalibration calibrate_kappa(const ChannelConfig& cfg, double rho, const PowerPolicy& policy,
                                 std::size_t batch, std::uint64_t seed, unsigned workers = 0);

/// mean(P)/P_bar over `batch` fresh draws.
double mean_power_ratio(const ChannelConfig& cfg, double rho, const PowerPolicy& policy,
                        std::size_t batch, std::uint64_t seed, unsigned workers = 0);

/// One block: outage iff sum_n log2(1 + P a_n / M) < rate_offset + r log2(rho).
/// A positive rate_offset (bits) with r = 0 gives the classical fixed-rate probe.
bool outage_trial(const ChannelConfig& cfg, double rho, double r, const PowerPolicy& policy,
                  std::uint64_t seed, double rate_offset = 0.0);

struct SlopeFit {
  double slope = 0.0;
  double std_error = 0.0;
  std::size_t points = 0;
  bool defined = false;
};

/// Least-squares slope of ln(p_out) against ln(rho) over points with at
/// least `min_events` outages.
SlopeFit fit_log_log_slope(std::span<const double> rho, std::span<const std::uint64_t> counts,
                           std::uint64_t trials, std::uint64_t min_events = 20);

struct SweepOptions {
  std::size_t calibration_batch = 100000;
  std::uint64_t min_events = 20;
  unsigned workers = 0;
  double rate_offset = 0.0;  // bits per channel use added to r log2(rho)
};

struct OutageSweep {
  std::vector<double> rho_grid;
  std::vector<std::uint64_t> outage_counts;
  std::vector<double> p_out;
  std::vector<double> ci_half_width;  // 95% normal approximation
  std::vector<double> kappa;          // resolved per rho
  std::uint64_t trials = 0;
  double r = 0.0;
  double t = 0.0;
  KappaMode kappa_mode = KappaMode::Calibrated;
  SlopeFit fit;

  double fitted_slope() const { return fit.slope; }
};

/// Per-rho outage frequencies and their log-log slope. Trial i uses the
/// same derived seed at every rho, and in Calibrated mode a single
/// calibration draw set serves all rho, so results do not depend on the
/// worker count.
OutageSweep run_sweep(const ChannelConfig& cfg, double r, std::span<const double> rho_grid,
                      std::uint64_t trials, const PowerPolicy& policy, std::uint64_t seed,
                      const SweepOptions& options = {});

/// `points` SNR values evenly spaced in dB from start_db to stop_db.
std::vector<double> db_grid(double start_db, double stop_db, std::size_t points);

}  // namespace dmtcsit

#endif  // DMTCSIT_OUTAGE_SIM_HPP
