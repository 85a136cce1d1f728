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

#ifndef DMTCSIT_ORACLE_HPP
#define DMTCSIT_ORACLE_HPP

#include <span>
#include <vector>

#include "dmtcsit/channel.hpp"

namespace dmtcsit {

// Brute-force evaluation of the SNR-exponent minimization that defines the
// outage diversity, used to cross-check the closed-form tradeoff. Nothing
// here calls into the closed-form module except tau().
//
// Exponent conventions: v_n is the exponent order of 1/a_n, with
// v_1 >= v_2 >= ... >= v_N >= 0; u_n likewise for the error eigenvalues,
// with u_n >= alpha.

struct ExponentVector {
  std::vector<double> v;
  std::vector<double> u;
};

struct OracleResult {
  double d_min = 0.0;  // +inf when no grid point is in outage
  std::vector<double> argmin_v;
  double grid_step = 0.0;
  double r_probe = 0.0;
};

/// sum_n (1 - v_n + sum_m w_m min(v_m, u_floor))^+ with the power exponent
/// damping set to 1. u_floor is the smallest error exponent u_N.
double outage_lhs(const ChannelConfig& cfg, std::span<const double> v, double u_floor);

/// Outage test with u pinned at alpha: outage_lhs(v, alpha) < r.
/// Throws std::invalid_argument unless v is non-negative and descending.
bool outage_condition(const ChannelConfig& cfg, std::span<const double> v, double r);

/// sum_n w_n v_n.
double exponent_objective(const ChannelConfig& cfg, std::span<const double> v);

/// C * step with C = N (2N-1+M-N): the most the objective can move when the
/// optimum is rounded up onto the grid.
double oracle_tolerance(const ChannelConfig& cfg, double step);

/// tau(N) + 1, enough to contain every optimum.
double default_v_max(const ChannelConfig& cfg);

/// Exhaustive minimum over descending grid vectors {0, step, ..., v_max}^N.
///
/// The probe is right-continuous in r: a grid point counts as outage when
/// its LHS is <= r for r < N, and < r at r = N. Requires 0 < r <= N,
/// step <= 0.05, v_max >= tau(N) + 1 and N <= 4.
OracleResult grid_oracle(const ChannelConfig& cfg, double r, double v_max, double step,
                         unsigned workers = 0);

/// grid_oracle for many probes at once; one pass over the grid. Results are
/// returned in the order of `r_values`.
std::vector<OracleResult> grid_oracle_sweep(const ChannelConfig& cfg,
                                            std::span<const double> r_values, double v_max,
                                            double step, unsigned workers = 0);

/// Minimum of sum_{n<=k} w_n v_n over the reduced outage set of subset k,
/// found by enumerating every vertex of the feasible polytope. Same
/// right-continuous convention as grid_oracle.
double subset_oracle(const ChannelConfig& cfg, int k, double r);

/// grid_oracle with the error exponents u free on {alpha, alpha+step, ...,
/// alpha+u_span} instead of pinned at alpha; objective
/// sum_n w_n (v_n + u_n - alpha). Only used to spot-check the pinning.
OracleResult free_u_oracle(const ChannelConfig& cfg, double r, double v_max, double u_span,
                           double step);

}  // namespace dmtcsit

#endif  // DMTCSIT_ORACLE_HPP
