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

#include "dmtcsit/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "dmtcsit/dmt.hpp"
#include "dmtcsit/parallel.hpp"

namespace dmtcsit {

namespace {

constexpr double kFeasSlack = 1e-9;
constexpr int kMaxOracleRx = 4;

// Outage threshold for a probe at r: LHS <= threshold counts as outage.
// Closed below N, open at N.
double probe_threshold(double r, int n) {
  return r < n - 1e-12 ? r + kFeasSlack : r - 2.0 * kFeasSlack;
}

struct Candidate {
  std::int64_t objective = std::numeric_limits<std::int64_t>::max();
  std::array<int, kMaxOracleRx> index{};

  bool better_than(const Candidate& o) const {
    if (objective != o.objective) return objective < o.objective;
    return index < o.index;
  }
};

// Calls fn(index) for every descending tuple index[0] >= ... >= index[n-1]
// with index[0] == lead and all entries in [0, lead].
template <typename Fn>
void for_each_descending_tail(int n, int lead, std::array<int, kMaxOracleRx>& index, Fn&& fn) {
  index[0] = lead;
  if (n == 1) {
    fn(index);
    return;
  }
  auto recurse = [&](auto&& self, int pos, int upper) -> void {
    for (int i = 0; i <= upper; ++i) {
      index[static_cast<std::size_t>(pos)] = i;
      if (pos + 1 == n)
        fn(index);
      else
        self(self, pos + 1, i);
    }
  };
  recurse(recurse, 1, lead);
}

void check_descending(std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0)) throw std::invalid_argument("exponent orders must be non-negative");
    if (i > 0 && v[i] > v[i - 1]) throw std::invalid_argument("exponent orders must be descending");
  }
}

}  // namespace

double outage_lhs(const ChannelConfig& cfg, std::span<const double> v, double u_floor) {
  const int n = cfg.n_rx();
  if (static_cast<int>(v.size()) != n) throw std::invalid_argument("v must have N entries");
  double shared = 0.0;
  for (int i = 0; i < n; ++i) shared += cfg.weight(i + 1) * std::min(v[i], u_floor);
  double lhs = 0.0;
  for (int i = 0; i < n; ++i) lhs += std::max(0.0, 1.0 - v[i] + shared);
  return lhs;
}

bool outage_condition(const ChannelConfig& cfg, std::span<const double> v, double r) {
  check_descending(v);
  return outage_lhs(cfg, v, cfg.alpha()) < r;
}

double exponent_objective(const ChannelConfig& cfg, std::span<const double> v) {
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) total += cfg.weight(static_cast<int>(i) + 1) * v[i];
  return total;
}

double oracle_tolerance(const ChannelConfig& cfg, double step) {
  return cfg.n_rx() * cfg.weight(cfg.n_rx()) * step;
}

double default_v_max(const ChannelConfig& cfg) { return tau(cfg, cfg.n_rx()) + 1.0; }

std::vector<OracleResult> grid_oracle_sweep(const ChannelConfig& cfg,
                                            std::span<const double> r_values, double v_max,
                                            double step, unsigned workers) {
  const int n = cfg.n_rx();
  if (n > kMaxOracleRx) throw std::invalid_argument("grid oracle supports N <= 4 only");
  if (!(step > 0.0) || step > 0.05) throw std::invalid_argument("grid step must be in (0, 0.05]");
  if (v_max < default_v_max(cfg) - 1e-12)
    throw std::invalid_argument("v_max must be at least tau(N) + 1");
  for (double r : r_values)
    if (!(r > 0.0) || r > n + 1e-12) throw std::invalid_argument("probe r must be in (0, N]");

  // Probes sorted by threshold so each grid point lands in one bucket: the
  // first probe that admits it. A prefix minimum then covers larger r.
  const std::size_t probes = r_values.size();
  std::vector<std::size_t> order(probes);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return r_values[x] < r_values[y]; });
  std::vector<double> thresholds(probes);
  for (std::size_t j = 0; j < probes; ++j) thresholds[j] = probe_threshold(r_values[order[j]], n);

  const int grid_top = static_cast<int>(std::floor(v_max / step + 1e-9));
  const unsigned pool = std::min<unsigned>(resolve_workers(workers), grid_top + 1);
  std::vector<std::vector<Candidate>> local(pool, std::vector<Candidate>(probes));

  std::vector<int> weights(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) weights[static_cast<std::size_t>(i)] = cfg.weight(i + 1);
  const double alpha = cfg.alpha();

  // Leading coordinates are dealt round-robin; the reduction below is
  // independent of that assignment.
  parallel_for(pool, pool, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t w = begin; w < end; ++w) {
      auto& best = local[w];
      std::array<int, kMaxOracleRx> index{};
      std::array<double, kMaxOracleRx> v{};
      for (int lead = static_cast<int>(w); lead <= grid_top; lead += static_cast<int>(pool)) {
        for_each_descending_tail(n, lead, index, [&](const std::array<int, kMaxOracleRx>& idx) {
          double shared = 0.0;
          std::int64_t objective = 0;
          for (int i = 0; i < n; ++i) {
            v[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i)] * step;
            shared += weights[static_cast<std::size_t>(i)] * std::min(v[static_cast<std::size_t>(i)], alpha);
            objective += static_cast<std::int64_t>(weights[static_cast<std::size_t>(i)]) *
                         idx[static_cast<std::size_t>(i)];
          }
          double lhs = 0.0;
          for (int i = 0; i < n; ++i) lhs += std::max(0.0, 1.0 - v[static_cast<std::size_t>(i)] + shared);
          const auto slot = std::lower_bound(thresholds.begin(), thresholds.end(), lhs);
          if (slot == thresholds.end()) return;
          Candidate c;
          c.objective = objective;
          c.index = idx;
          auto& cell = best[static_cast<std::size_t>(slot - thresholds.begin())];
          if (c.better_than(cell)) cell = c;
        });
      }
    }
  });

  std::vector<Candidate> merged(probes);
  for (const auto& part : local)
    for (std::size_t j = 0; j < probes; ++j)
      if (part[j].better_than(merged[j])) merged[j] = part[j];
  for (std::size_t j = 1; j < probes; ++j)
    if (merged[j - 1].better_than(merged[j])) merged[j] = merged[j - 1];

  std::vector<OracleResult> results(probes);
  for (std::size_t j = 0; j < probes; ++j) {
    OracleResult& out = results[order[j]];
    out.grid_step = step;
    out.r_probe = r_values[order[j]];
    if (merged[j].objective == std::numeric_limits<std::int64_t>::max()) {
      out.d_min = kInfinity;
      continue;
    }
    out.d_min = static_cast<double>(merged[j].objective) * step;
    for (int i = 0; i < n; ++i)
      out.argmin_v.push_back(merged[j].index[static_cast<std::size_t>(i)] * step);
  }
  return results;
}

OracleResult grid_oracle(const ChannelConfig& cfg, double r, double v_max, double step,
                         unsigned workers) {
  const double probe[] = {r};
  return grid_oracle_sweep(cfg, probe, v_max, step, workers).front();
}

double subset_oracle(const ChannelConfig& cfg, int k, double r) {
  const int n = cfg.n_rx();
  if (k < 1 || k > n) throw std::out_of_range("subset index outside 1..N");
  if (!(r >= 0.0) || r > n + 1e-12) throw std::out_of_range("r outside [0, N]");
  const double alpha = cfg.alpha();
  const double top = tau(cfg, k);
  // Feasible set: sum_{n<=k} v_n >= N tau - r with alpha <= v_k <= ... <= v_1 <= tau.
  const double need = n * top - r;
  const bool at_end = r >= n - 1e-12;
  const double max_sum = k * top;
  if (at_end ? !(max_sum > need + kFeasSlack) : !(max_sum >= need - kFeasSlack)) return kInfinity;

  auto weight_sum = [&](int from, int to) {  // sum of w_i for i in [from, to]
    double s = 0.0;
    for (int i = from; i <= to; ++i) s += cfg.weight(i);
    return s;
  };

  // Vertices: the first a coordinates at tau, a block of b coordinates at a
  // common free level x, the remaining c at alpha.
  double best = kInfinity;
  for (int a = 0; a <= k; ++a) {
    for (int b = 0; a + b <= k; ++b) {
      const int c = k - a - b;
      double x = 0.0;
      if (b == 0) {
        if (a * top + c * alpha < need - kFeasSlack) continue;
      } else {
        x = (need - a * top - c * alpha) / b;
        if (x < alpha - kFeasSlack || x > top + kFeasSlack) continue;
        x = std::clamp(x, alpha, top);
      }
      const double value = top * weight_sum(1, a) + x * weight_sum(a + 1, a + b) +
                           alpha * weight_sum(a + b + 1, k);
      best = std::min(best, value);
    }
  }
  return best;
}

OracleResult free_u_oracle(const ChannelConfig& cfg, double r, double v_max, double u_span,
                           double step) {
  const int n = cfg.n_rx();
  if (n > kMaxOracleRx) throw std::invalid_argument("grid oracle supports N <= 4 only");
  if (!(step > 0.0) || step > 0.05) throw std::invalid_argument("grid step must be in (0, 0.05]");
  if (!(r > 0.0) || r > n + 1e-12) throw std::invalid_argument("probe r must be in (0, N]");
  const int v_top = static_cast<int>(std::floor(v_max / step + 1e-9));
  const int u_top = static_cast<int>(std::floor(u_span / step + 1e-9));
  const double alpha = cfg.alpha();
  const double threshold = probe_threshold(r, n);

  OracleResult out;
  out.d_min = kInfinity;
  out.grid_step = step;
  out.r_probe = r;
  std::array<int, kMaxOracleRx> vi{};
  std::array<int, kMaxOracleRx> ui{};
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int v_lead = 0; v_lead <= v_top; ++v_lead) {
    for_each_descending_tail(n, v_lead, vi, [&](const std::array<int, kMaxOracleRx>& vidx) {
      for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = vidx[static_cast<std::size_t>(i)] * step;
      const double v_cost = exponent_objective(cfg, v);
      if (v_cost >= out.d_min) return;
      for (int u_lead = 0; u_lead <= u_top; ++u_lead) {
        for_each_descending_tail(n, u_lead, ui, [&](const std::array<int, kMaxOracleRx>& uidx) {
          const double u_floor = alpha + uidx[static_cast<std::size_t>(n - 1)] * step;
          if (outage_lhs(cfg, v, u_floor) > threshold) return;
          double cost = v_cost;
          for (int i = 0; i < n; ++i)
            cost += cfg.weight(i + 1) * uidx[static_cast<std::size_t>(i)] * step;
          if (cost < out.d_min) {
            out.d_min = cost;
            out.argmin_v = v;
          }
        });
      }
    });
  }
  return out;
}

}  // namespace dmtcsit
