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

#ifndef DMTCSIT_DMT_HPP
#define DMTCSIT_DMT_HPP

#include <limits>
#include <map>
#include <vector>

#include "dmtcsit/channel.hpp"

namespace dmtcsit {

/// Diversity values are extended reals; +inf means "no outage".
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class CurveKind {
  SingleLine,     // N = 1 or alpha >= 1/(M-1)
  Discontinuous,  // several segments, downward jumps between them
  Continuous,     // piecewise-linear baselines
};

/// Affine piece of a tradeoff curve on [r_left, r_right) (or closed at the
/// right when right_closed is set, which only the last segment does).
struct DmtSegment {
  int k = 0;  // outage subset index; 0 for the single-line case
  double r_left = 0.0;
  double d_left = 0.0;
  double r_right = 0.0;
  double d_right = 0.0;
  bool left_closed = true;
  bool right_closed = false;

  double slope() const;
  double value_at(double r) const;
  bool contains(double r) const;
};

struct DmtCurve {
  std::vector<DmtSegment> segments;  // ascending r_left
  CurveKind kind = CurveKind::SingleLine;
  std::vector<int> b_set;
  std::map<int, double> tau_table;  // k = 0..N
};

/// Expurgated subset indices with their predecessor map; the smallest member
/// maps to 0.
struct ExpurgatedSet {
  std::vector<int> members;  // ascending
  std::map<int, int> predecessor;

  bool contains(int k) const { return predecessor.count(k) != 0; }
  int min() const { return members.front(); }
};

struct CornerPoint {
  int k_prime = 0;
  double r = 0.0;
  double d = 0.0;
  bool in_domain = true;  // r <= N
};

/// 1 + k alpha (M-N+k); tau(0) = 1.
double tau(const ChannelConfig& cfg, int k);

/// Lower edge (N-k) tau(k) of the region where subset k has finite diversity.
double outage_onset(const ChannelConfig& cfg, int k);

/// k in 1..N with (M-N+k)(N-k) < 1/alpha. Always contains N.
std::vector<int> set_A(const ChannelConfig& cfg);

ExpurgatedSet set_B(const ChannelConfig& cfg);

/// Corner points of d_k(r) for k' = k, k-1, ..., 1 (ascending r).
std::vector<CornerPoint> dk_corner_points(const ChannelConfig& cfg, int k);

/// Diversity of outage subset k at r; +inf when r <= (N-k) tau(k) or when
/// k is outside set A.
double dk_eval(const ChannelConfig& cfg, int k, double r);

DmtCurve compute_dmt_curve(const ChannelConfig& cfg);

/// Value at r in [0, N]. Interior boundaries belong to the segment on their
/// right (the lower one). Throws std::out_of_range outside [0, N].
double eval_dmt(const DmtCurve& curve, double r);

/// lim_{s -> r-} d(s); equals eval_dmt(r) except at jump points and r = 0.
double left_limit(const DmtCurve& curve, double r);

/// Interior r where the left limit differs from the owned value.
std::vector<double> jump_points(const DmtCurve& curve);

/// Largest multiplexing gain covered by the curve (N).
double curve_end(const DmtCurve& curve);

/// d(N) from p = min B without going through the segments:
/// p alpha (M-N+p)(MN + (p-N)(N-p+1)) - p^2 + p.
double full_multiplexing_diversity(const ChannelConfig& cfg);

/// Zheng-Tse curve through (r, (M-r)(N-r)), r = 0..N.
DmtCurve baseline_no_csit(const ChannelConfig& cfg);

/// K(1 + alpha - r) for SIMO/MISO links. Throws for N > 1.
DmtCurve baseline_rate_adaptation(const ChannelConfig& cfg);

}  // namespace dmtcsit

#endif  // DMTCSIT_DMT_HPP
