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

#include "dmtcsit/outage_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <gsl/gsl_fit.h>

#include "dmtcsit/parallel.hpp"
#include "dmtcsit/rng.hpp"

namespace dmtcsit {

namespace {

constexpr std::uint64_t kTrialStream = 0x7472;
constexpr std::uint64_t kCalibrationStream = 0x6B61;
constexpr std::uint64_t kValidationStream = 0x7661;

// prod_n b_n^(-w_n t) in log domain.
double log_power_factor(const ChannelConfig& cfg, std::span<const double> b, double t) {
  if (static_cast<int>(b.size()) != cfg.n_rx())
    throw std::invalid_argument("eigenvalue vector must have N entries");
  double acc = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!(b[i] > 0.0)) throw std::invalid_argument("estimated-channel eigenvalue is zero");
    acc += cfg.weight(static_cast<int>(i) + 1) * std::log(b[i]);
  }
  return -t * acc;
}

// Per-draw prod b^(-w t) for draws derived from (seed, stream, i).
std::vector<double> power_factors(const ChannelConfig& cfg, double rho, double t,
                                  std::size_t batch, std::uint64_t seed, std::uint64_t stream,
                                  unsigned workers) {
  std::vector<double> factors(batch);
  parallel_for(batch, workers, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i) {
      const ChannelDraw draw = sample_channel(cfg, rho, derive_seed(seed, stream, i));
      const std::vector<double> b = eig_ascending(draw.estimate());
      factors[i] = std::exp(log_power_factor(cfg, b, t));
    }
  });
  return factors;
}

double mean_of(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

std::string to_string(KappaMode mode) {
  return mode == KappaMode::Analytic ? "analytic" : "calibrated";
}

KappaMode parse_kappa_mode(const std::string& text) {
  if (text == "analytic") return KappaMode::Analytic;
  if (text == "calibrated") return KappaMode::Calibrated;
  throw std::invalid_argument("kappa mode must be 'analytic' or 'calibrated', got '" + text + "'");
}

void PowerPolicy::validate() const {
  if (!(t >= 0.0 && t < 1.0)) throw std::invalid_argument("power damping t must be in [0, 1)");
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("kappa must be positive and finite");
}

double adapted_power(const ChannelConfig& cfg, std::span<const double> b,
                     const PowerPolicy& policy, double p_bar) {
  policy.validate();
  if (!(p_bar > 0.0)) throw std::invalid_argument("average power must be positive");
  return std::exp(std::log(policy.kappa * p_bar) + log_power_factor(cfg, b, policy.t));
}

double analytic_kappa(const ChannelConfig& cfg, double rho, double t) {
  const int m = cfg.m_tx();
  const int n = cfg.n_rx();
  const double sigma_e_sq = error_variance(cfg, rho);
  double log_kappa = wishart_log_norm_const(m, n) + m * n * std::log1p(sigma_e_sq);
  for (int i = 1; i <= n; ++i) log_kappa += std::log(cfg.weight(i) * (1.0 - t));
  return std::exp(log_kappa);
}

KappaCalibration calibrate_kappa(const ChannelConfig& cfg, double rho, const PowerPolicy& policy,
                                 std::size_t batch, std::uint64_t seed, unsigned workers) {
  PowerPolicy probe = policy;
  probe.kappa = 1.0;
  probe.validate();
  KappaCalibration out;
  if (policy.t == 0.0) return out;
  if (policy.kappa_mode == KappaMode::Analytic) {
    out.kappa = analytic_kappa(cfg, rho, policy.t);
    return out;
  }
  if (batch < 10000) throw std::invalid_argument("calibration batch must be at least 10^4");
  const std::vector<double> factors =
      power_factors(cfg, rho, policy.t, batch, seed, kCalibrationStream, workers);
  const std::span<const double> all(factors);
  const double mean = mean_of(all);
  const double first = mean_of(all.first(batch / 2));
  const double second = mean_of(all.subspan(batch / 2));
  out.kappa = 1.0 / mean;
  out.batch = batch;
  out.batch_mean_ratio = out.kappa * mean;
  out.split_half_gap = std::abs(first - second) / mean;
  return out;
}

double mean_power_ratio(const ChannelConfig& cfg, double rho, const PowerPolicy& policy,
                        std::size_t batch, std::uint64_t seed, unsigned workers) {
  policy.validate();
  if (batch == 0) throw std::invalid_argument("batch must be non-empty");
  const std::vector<double> factors =
      power_factors(cfg, rho, policy.t, batch, seed, kValidationStream, workers);
  return policy.kappa * mean_of(factors);
}

bool outage_trial(const ChannelConfig& cfg, double rho, double r, const PowerPolicy& policy,
                  std::uint64_t seed, double rate_offset) {
  if (!(r >= 0.0) || r > cfg.n_rx()) throw std::invalid_argument("r must be in [0, N]");
  if (!(rate_offset >= 0.0)) throw std::invalid_argument("rate offset must be non-negative");
  const ChannelDraw draw = sample_channel(cfg, rho, seed);
  const std::vector<double> a = eig_ascending(draw.h);
  const std::vector<double> b = eig_ascending(draw.estimate());
  const double power = adapted_power(cfg, b, policy, rho);
  const double scale = power / cfg.m_tx();
  double capacity = 0.0;
  for (double an : a) capacity += std::log2(1.0 + scale * an);
  return capacity < rate_offset + r * std::log2(rho);
}

SlopeFit fit_log_log_slope(std::span<const double> rho, std::span<const std::uint64_t> counts,
                           std::uint64_t trials, std::uint64_t min_events) {
  if (rho.size() != counts.size()) throw std::invalid_argument("rho and counts differ in length");
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (counts[i] == 0 || counts[i] < min_events) continue;
    x.push_back(std::log(rho[i]));
    y.push_back(std::log(static_cast<double>(counts[i]) / static_cast<double>(trials)));
  }
  SlopeFit fit;
  fit.points = x.size();
  if (x.size() < 2) return fit;
  double intercept = 0.0, cov00 = 0.0, cov01 = 0.0, cov11 = 0.0, sumsq = 0.0;
  gsl_fit_linear(x.data(), 1, y.data(), 1, x.size(), &intercept, &fit.slope, &cov00, &cov01,
                 &cov11, &sumsq);
  fit.std_error = std::sqrt(cov11);
  fit.defined = true;
  return fit;
}

OutageSweep run_sweep(const ChannelConfig& cfg, double r, std::span<const double> rho_grid,
                      std::uint64_t trials, const PowerPolicy& policy, std::uint64_t seed,
                      const SweepOptions& options) {
  if (trials < 1000) throw std::invalid_argument("a sweep needs at least 10^3 trials per point");
  if (rho_grid.size() < 2) throw std::invalid_argument("rho grid needs at least two points");
  for (std::size_t i = 0; i < rho_grid.size(); ++i) {
    if (!(rho_grid[i] > 0.0)) throw std::invalid_argument("rho values must be positive");
    if (i > 0 && !(rho_grid[i] > rho_grid[i - 1]))
      throw std::invalid_argument("rho grid must be strictly increasing");
  }
  if (rho_grid.back() < 100.0 * rho_grid.front())
    throw std::invalid_argument("rho grid must span at least two decades");
  if (!(r >= 0.0) || r > cfg.n_rx()) throw std::invalid_argument("r must be in [0, N]");
  if (!(options.rate_offset >= 0.0)) throw std::invalid_argument("rate offset must be non-negative");
  policy.validate();

  OutageSweep sweep;
  sweep.rho_grid.assign(rho_grid.begin(), rho_grid.end());
  sweep.trials = trials;
  sweep.r = r;
  sweep.t = policy.t;
  sweep.kappa_mode = policy.kappa_mode;

  const std::uint64_t calibration_seed = derive_seed(seed, kCalibrationStream, 0);
  for (double rho : rho_grid) {
    PowerPolicy resolved = policy;
    resolved.kappa =
        calibrate_kappa(cfg, rho, policy, options.calibration_batch, calibration_seed, options.workers)
            .kappa;

    const unsigned pool = resolve_workers(options.workers);
    std::vector<std::uint64_t> partial(pool, 0);
    parallel_for(trials, pool, [&](std::size_t begin, std::size_t end, unsigned w) {
      std::uint64_t count = 0;
      for (std::size_t i = begin; i < end; ++i)
        if (outage_trial(cfg, rho, r, resolved, derive_seed(seed, kTrialStream, i), options.rate_offset))
          ++count;
      partial[w] = count;
    });
    const std::uint64_t count = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
    const double p = static_cast<double>(count) / static_cast<double>(trials);
    sweep.outage_counts.push_back(count);
    sweep.p_out.push_back(p);
    sweep.ci_half_width.push_back(1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials)));
    sweep.kappa.push_back(resolved.kappa);
  }
  sweep.fit = fit_log_log_slope(sweep.rho_grid, sweep.outage_counts, trials, options.min_events);
  return sweep;
}

std::vector<double> db_grid(double start_db, double stop_db, std::size_t points) {
  if (points < 2) throw std::invalid_argument("need at least two grid points");
  if (!(stop_db > start_db)) throw std::invalid_argument("stop must exceed start");
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double db = start_db + (stop_db - start_db) * static_cast<double>(i) /
                                     static_cast<double>(points - 1);
    grid[i] = std::pow(10.0, db / 10.0);
  }
  return grid;
}

}  // namespace dmtcsit
