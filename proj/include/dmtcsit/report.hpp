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

#ifndef DMTCSIT_REPORT_HPP
#define DMTCSIT_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dmtcsit/channel.hpp"
#include "dmtcsit/outage_sim.hpp"

namespace dmtcsit {

inline constexpr std::uint64_t kDefaultSeed = 271828;

/// One record of an emitted dataset. Every command uses the same five
/// columns so the output can be plotted by series without a schema per
/// figure. Non-finite y values serialize as "inf", "-inf" or "nan".
struct DataRow {
  std::string series;
  double x = 0.0;
  double y = 0.0;
  std::optional<int> aux_k;
  std::string aux_note;
};

using Dataset = std::vector<DataRow>;

enum class Format { Csv, Json };

Format parse_format(const std::string& text);

std::string format_number(double value);  // %.17g, round-trips bit-exactly
double parse_number(std::string_view text);

std::string to_csv(const Dataset& rows);
Dataset parse_csv(std::string_view text);
std::string to_json(const Dataset& rows);
Dataset parse_json(std::string_view text);
std::string serialize(const Dataset& rows, Format format);

/// Writes to `path`, or to stdout when path is "-".
void write_dataset(const Dataset& rows, Format format, const std::string& path);

/// Bitwise equality of x and y (NaN equals NaN), exact equality elsewhere.
bool identical(const Dataset& lhs, const Dataset& rhs);

enum class Command { Curve, OracleCheck, Simulate, Figures };

struct OracleParams {
  double grid_step = 0.02;
  double v_max = 0.0;  // 0 selects tau(N) + 1
  unsigned workers = 0;
};

struct SimulationParams {
  double r = 0.5;
  double rho_start_db = 10.0;
  double rho_stop_db = 40.0;
  std::size_t rho_points = 7;
  std::uint64_t trials = 100000;
  PowerPolicy policy;
  std::uint64_t seed = kDefaultSeed;
  std::size_t calibration_batch = 100000;
  double rate_offset = 0.0;
  unsigned workers = 0;
};

struct FigureParams {
  int figure = 2;
  int antennas = 4;  // K for the SIMO/MISO figure
  double r = 0.5;    // multiplexing gain for the SIMO/MISO figure
};

struct ReportSpec {
  Command command = Command::Curve;
  ChannelConfig cfg;
  std::vector<double> r_grid;      // within [0, N]
  std::vector<double> alpha_list;  // empty: use cfg.alpha()
  std::string output_path = "-";
  Format format = Format::Csv;
  OracleParams oracle;
  SimulationParams sim;
  FigureParams fig;
};

/// 0, step, 2 step, ..., n (the last point is exactly n).
std::vector<double> uniform_grid(double stop, double step);

/// Throws std::invalid_argument describing the first bad field.
void validate(const ReportSpec& spec);

Dataset cmd_curve(const ReportSpec& spec);

struct OracleCheckReport {
  Dataset rows;
  std::size_t checked = 0;
  std::size_t failures = 0;

  bool all_pass() const { return failures == 0; }
};

OracleCheckReport cmd_oracle_check(const ReportSpec& spec);

Dataset cmd_simulate(const ReportSpec& spec);

Dataset cmd_figures(const ReportSpec& spec);

}  // namespace dmtcsit

#endif  // DMTCSIT_REPORT_HPP
