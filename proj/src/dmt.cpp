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

#include "dmtcsit/dmt.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dmtcsit {

namespace {

// Relative margin applied to strict comparisons so that exact ties which
// round differently in floating point still count as ties.
constexpr double kTieMargin = 1e-12;
constexpr double kDomainSlack = 1e-12;

void require_k(const ChannelConfig& cfg, int k, int lowest) {
  if (k < lowest || k > cfg.n_rx())
    throw std::out_of_range("subset index k=" + std::to_string(k) + " outside " +
                            std::to_string(lowest) + ".." + std::to_string(cfg.n_rx()));
}

bool in_set_A(const ChannelConfig& cfg, int k) {
  const int m = cfg.m_tx();
  const int n = cfg.n_rx();
  const double product = static_cast<double>((m - n + k) * (n - k));
  return cfg.alpha() * product < 1.0 - kTieMargin;
}

double clamp_to_domain(double r, double n) {
  if (!(r >= -kDomainSlack) || !(r <= n + kDomainSlack))
    throw std::out_of_range("multiplexing gain r=" + std::to_string(r) + " outside [0, " +
                            std::to_string(n) + "]");
  return std::min(std::max(r, 0.0), n);
}

}  // namespace

double DmtSegment::slope() const {
  if (r_right == r_left) return 0.0;
  return (d_right - d_left) / (r_right - r_left);
}

double DmtSegment::value_at(double r) const {
  if (r == r_right) return d_right;
  return d_left + slope() * (r - r_left);
}

bool DmtSegment::contains(double r) const {
  const bool after_left = left_closed ? r >= r_left : r > r_left;
  const bool before_right = right_closed ? r <= r_right : r < r_right;
  return after_left && before_right;
}

double tau(const ChannelConfig& cfg, int k) {
  require_k(cfg, k, 0);
  return 1.0 + k * cfg.alpha() * (cfg.m_tx() - cfg.n_rx() + k);
}

double outage_onset(const ChannelConfig& cfg, int k) {
  return (cfg.n_rx() - k) * tau(cfg, k);
}

std::vector<int> set_A(const ChannelConfig& cfg) {
  std::vector<int> a;
  for (int k = 1; k <= cfg.n_rx(); ++k)
    if (in_set_A(cfg, k)) a.push_back(k);
  return a;
}

ExpurgatedSet set_B(const ChannelConfig& cfg) {
  ExpurgatedSet b;
  double best_onset = kInfinity;
  int previous = 0;
  for (int k : set_A(cfg)) {
    const double onset = outage_onset(cfg, k);
    // Ties keep the smaller index: its curve is the lower one.
    if (onset < best_onset * (1.0 - kTieMargin)) {
      b.members.push_back(k);
      b.predecessor[k] = previous;
      previous = k;
    }
    best_onset = std::min(best_onset, onset);
  }
  return b;
}

std::vector<CornerPoint> dk_corner_points(const ChannelConfig& cfg, int k) {
  require_k(cfg, k, 1);
  const int m = cfg.m_tx();
  const int n = cfg.n_rx();
  const double alpha = cfg.alpha();
  const double t = tau(cfg, k);
  std::vector<CornerPoint> corners;
  for (int kp = k; kp >= 1; --kp) {
    CornerPoint c;
    c.k_prime = kp;
    c.r = (n - kp) * t - (k - kp) * alpha;
    c.d = kp * (m - n + kp) * t + (k - kp) * (k + kp + m - n) * alpha;
    c.in_domain = c.r <= n + kDomainSlack;
    corners.push_back(c);
  }
  return corners;
}

double dk_eval(const ChannelConfig& cfg, int k, double r) {
  require_k(cfg, k, 1);
  const int m = cfg.m_tx();
  const int n = cfg.n_rx();
  r = clamp_to_domain(r, n);
  if (!in_set_A(cfg, k)) return kInfinity;
  const double t = tau(cfg, k);
  if (r <= (n - k) * t) return kInfinity;
  const double alpha = cfg.alpha();
  // Piece k' spans [(N-k')tau - (k-k')alpha, (N-k'+1)tau - (k-k'+1)alpha).
  // The k' = 1 piece reaches N tau - k alpha >= N, so the loop always lands.
  int kp = k;
  while (kp > 1 && r >= (n - kp + 1) * t - (k - kp + 1) * alpha) --kp;
  return ((n - kp) * (kp - n - 1) + m * n) * t + (k - kp + 1) * (k - kp) * alpha -
         (2 * kp - 1 + m - n) * r;
}

DmtCurve compute_dmt_curve(const ChannelConfig& cfg) {
  const int m = cfg.m_tx();
  const int n = cfg.n_rx();
  DmtCurve curve;
  for (int k = 0; k <= n; ++k) curve.tau_table[k] = tau(cfg, k);
  const ExpurgatedSet b = set_B(cfg);
  curve.b_set = b.members;
  const bool single_line = n == 1 || set_A(cfg).size() == 1;
  curve.kind = single_line ? CurveKind::SingleLine : CurveKind::Discontinuous;

  // Largest k has the lowest onset (0 for k = N), so walk B downwards.
  for (auto it = b.members.rbegin(); it != b.members.rend(); ++it) {
    const int k = *it;
    const int prev = b.predecessor.at(k);
    const double t = tau(cfg, k);
    DmtSegment seg;
    seg.k = single_line ? 0 : k;
    seg.r_left = (n - k) * t;
    seg.d_left = k * (m - n + k) * t;
    seg.r_right = (n - prev) * tau(cfg, prev);
    seg.d_right = ((n - k) * (k - n - 1) + m * n) * t - (2 * k - 1 + m - n) * seg.r_right;
    seg.left_closed = true;
    seg.right_closed = prev == 0;
    curve.segments.push_back(seg);
  }
  return curve;
}

double curve_end(const DmtCurve& curve) {
  if (curve.segments.empty()) throw std::invalid_argument("empty curve");
  return curve.segments.back().r_right;
}

double eval_dmt(const DmtCurve& curve, double r) {
  r = clamp_to_domain(r, curve_end(curve));
  // A probe within rounding of a boundary belongs to the segment starting there.
  for (const auto& seg : curve.segments)
    if (std::abs(r - seg.r_left) <= kDomainSlack * std::max(1.0, r)) return seg.d_left;
  for (const auto& seg : curve.segments)
    if (seg.contains(r)) return seg.value_at(r);
  // Only reachable for r == N when the last segment is open, which the
  // builders never produce.
  return curve.segments.back().d_right;
}

double left_limit(const DmtCurve& curve, double r) {
  r = clamp_to_domain(r, curve_end(curve));
  for (const auto& seg : curve.segments)
    if (r > seg.r_left && r <= seg.r_right) return seg.value_at(r);
  return eval_dmt(curve, r);
}

std::vector<double> jump_points(const DmtCurve& curve) {
  std::vector<double> jumps;
  for (std::size_t i = 1; i < curve.segments.size(); ++i) {
    const auto& before = curve.segments[i - 1];
    const auto& after = curve.segments[i];
    if (before.d_right != after.d_left) jumps.push_back(after.r_left);
  }
  return jumps;
}

double full_multiplexing_diversity(const ChannelConfig& cfg) {
  const int m = cfg.m_tx();
  const int n = cfg.n_rx();
  const int p = set_B(cfg).min();
  return p * cfg.alpha() * (m - n + p) * (m * n + (p - n) * (n - p + 1)) - p * p + p;
}

DmtCurve baseline_no_csit(const ChannelConfig& cfg) {
  const int m = cfg.m_tx();
  const int n = cfg.n_rx();
  DmtCurve curve;
  curve.kind = n == 1 ? CurveKind::SingleLine : CurveKind::Continuous;
  for (int i = 0; i < n; ++i) {
    DmtSegment seg;
    seg.k = n - i;
    seg.r_left = i;
    seg.d_left = static_cast<double>((m - i) * (n - i));
    seg.r_right = i + 1;
    seg.d_right = static_cast<double>((m - i - 1) * (n - i - 1));
    seg.right_closed = i + 1 == n;
    curve.segments.push_back(seg);
  }
  return curve;
}

DmtCurve baseline_rate_adaptation(const ChannelConfig& cfg) {
  if (cfg.n_rx() != 1)
    throw std::invalid_argument("rate-adaptation baseline is defined for SIMO/MISO links only");
  const double k = cfg.m_tx();
  DmtCurve curve;
  curve.kind = CurveKind::SingleLine;
  DmtSegment seg;
  seg.k = 0;
  seg.r_left = 0.0;
  seg.d_left = k * (1.0 + cfg.alpha());
  seg.r_right = 1.0;
  seg.d_right = k * cfg.alpha();
  seg.right_closed = true;
  curve.segments.push_back(seg);
  return curve;
}

}  // namespace dmtcsit
