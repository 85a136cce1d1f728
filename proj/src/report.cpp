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

#include "dmtcsit/report.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dmtcsit/dmt.hpp"
#include "dmtcsit/oracle.hpp"

namespace dmtcsit {

namespace {

constexpr const char* kCsvHeader = "series,x,y,aux_k,aux_note";

std::string short_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string tagged(const std::string& series, double alpha) {
  return series + "[alpha=" + short_number(alpha) + "]";
}

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

bool same_double(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

std::vector<double> alphas_of(const ReportSpec& spec) {
  if (!spec.alpha_list.empty()) return spec.alpha_list;
  return {spec.cfg.alpha()};
}

ChannelConfig with_alpha(const ChannelConfig& cfg, double alpha) {
  return ChannelConfig(cfg.m_tx(), cfg.n_rx(), alpha, cfg.block_len());
}

int owning_k(const DmtCurve& curve, double r) {
  for (const auto& seg : curve.segments)
    if (seg.contains(r)) return seg.k;
  return curve.segments.back().k;
}

void append_curve_rows(Dataset& rows, const ChannelConfig& cfg, const std::vector<double>& r_grid) {
  const DmtCurve curve = compute_dmt_curve(cfg);
  const double alpha = cfg.alpha();

  for (const auto& seg : curve.segments) {
    rows.push_back({tagged("segment", alpha), seg.r_left, seg.d_left, seg.k,
                    seg.left_closed ? "left_closed" : "left_open"});
    rows.push_back({tagged("segment", alpha), seg.r_right, seg.d_right, seg.k,
                    seg.right_closed ? "right_closed" : "right_open"});
  }

  // Distinct corner points; at a jump both the limit and the owned value.
  std::vector<std::pair<double, double>> corners;
  for (const auto& seg : curve.segments) {
    for (auto point : {std::pair{seg.r_left, seg.d_left}, std::pair{seg.r_right, seg.d_right}})
      if (corners.empty() || corners.back() != point) corners.push_back(point);
  }
  for (const auto& [r, d] : corners) {
    const bool is_limit = r > 0.0 && left_limit(curve, r) == d && eval_dmt(curve, r) != d;
    rows.push_back({tagged("corner", alpha), r, d, std::nullopt, is_limit ? "limit" : "value"});
  }

  std::vector<double> jumps = jump_points(curve);
  std::set<double> sample(r_grid.begin(), r_grid.end());
  sample.insert(jumps.begin(), jumps.end());
  for (double r : sample) {
    if (std::find(jumps.begin(), jumps.end(), r) != jumps.end())
      rows.push_back({tagged("d_O", alpha), r, left_limit(curve, r), std::nullopt, "limit"});
    rows.push_back({tagged("d_O", alpha), r, eval_dmt(curve, r), owning_k(curve, r), "value"});
  }

  for (int k : curve.b_set)
    for (double r : r_grid)
      rows.push_back({tagged("d_k", alpha), r, dk_eval(cfg, k, r), k, "value"});
}

void append_no_csit_rows(Dataset& rows, const ChannelConfig& cfg, const std::vector<double>& r_grid) {
  const DmtCurve base = baseline_no_csit(cfg);
  for (double r : r_grid) rows.push_back({"no_csit", r, eval_dmt(base, r), std::nullopt, "value"});
}

std::string set_label(const std::vector<int>& members) {
  std::string label = "B={";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) label += ",";
    label += std::to_string(members[i]);
  }
  return label + "}";
}

Dataset figure_simo_miso(const FigureParams& fig) {
  Dataset rows;
  const int k = fig.antennas;
  const double r = fig.r;
  const std::vector<double> alphas = uniform_grid(1.0, 0.01);
  const DmtCurve no_csit = baseline_no_csit(ChannelConfig(k, 1, 0.0));
  for (double alpha : alphas) {
    const ChannelConfig cfg(k, 1, alpha);
    rows.push_back({"no_csit", alpha, eval_dmt(no_csit, r), std::nullopt, "value"});
    rows.push_back({"rate_adaptation", alpha, eval_dmt(baseline_rate_adaptation(cfg), r),
                    std::nullopt, "value"});
    rows.push_back({"power_adaptation", alpha, eval_dmt(compute_dmt_curve(cfg), r), std::nullopt,
                    "value"});
  }
  return rows;
}

Dataset figure_full_multiplexing(int m, int n) {
  Dataset rows;
  std::set<double> alphas;
  for (double a : uniform_grid(0.4, 0.0025)) alphas.insert(a);
  std::vector<double> thresholds;
  for (int k = 1; k < n; ++k) thresholds.push_back(1.0 / ((m - n + k) * (n - k)));
  alphas.insert(thresholds.begin(), thresholds.end());

  for (double alpha : alphas) {
    const bool at_threshold =
        std::find(thresholds.begin(), thresholds.end(), alpha) != thresholds.end();
    if (at_threshold && alpha > 0.0) {
      // Step below the tie margin used by the candidate-set test.
      const ChannelConfig below(m, n, alpha * (1.0 - 1e-9));
      const DmtCurve curve = compute_dmt_curve(below);
      rows.push_back({"d_N", alpha, eval_dmt(curve, n), curve.b_set.front(), "limit;" + set_label(curve.b_set)});
    }
    const ChannelConfig cfg(m, n, alpha);
    const DmtCurve curve = compute_dmt_curve(cfg);
    rows.push_back({"d_N", alpha, eval_dmt(curve, n), curve.b_set.front(), "value;" + set_label(curve.b_set)});
  }
  return rows;
}

}  // namespace

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw std::invalid_argument("format must be 'csv' or 'json', got '" + text + "'");
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

double parse_number(std::string_view text) {
  const std::string s(text);
  if (s == "inf") return kInfinity;
  if (s == "-inf") return -kInfinity;
  if (s == "nan") return std::nan("");
  char* end = nullptr;
  const double value = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw std::invalid_argument("not a number: '" + s + "'");
  return value;
}

std::string to_csv(const Dataset& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& row : rows) {
    out += csv_field(row.series) + "," + format_number(row.x) + "," + format_number(row.y) + ",";
    if (row.aux_k) out += std::to_string(*row.aux_k);
    out += "," + csv_field(row.aux_note) + "\n";
  }
  return out;
}

Dataset parse_csv(std::string_view text) {
  Dataset rows;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    if (header) {
      if (line != kCsvHeader) throw std::invalid_argument("unexpected CSV header");
      header = false;
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 5) throw std::invalid_argument("CSV record must have 5 fields");
    DataRow row;
    row.series = fields[0];
    row.x = parse_number(fields[1]);
    row.y = parse_number(fields[2]);
    if (!fields[3].empty()) row.aux_k = std::stoi(fields[3]);
    row.aux_note = fields[4];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string to_json(const Dataset& rows) {
  auto number = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return format_number(v);
  };
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    out.push_back({{"series", row.series},
                   {"x", number(row.x)},
                   {"y", number(row.y)},
                   {"aux_k", row.aux_k ? nlohmann::json(*row.aux_k) : nlohmann::json(nullptr)},
                   {"aux_note", row.aux_note}});
  }
  return out.dump(1) + "\n";
}

Dataset parse_json(std::string_view text) {
  auto number = [](const nlohmann::json& j) {
    return j.is_string() ? parse_number(j.get<std::string>()) : j.get<double>();
  };
  const auto doc = nlohmann::json::parse(text);
  if (!doc.is_array()) throw std::invalid_argument("JSON dataset must be an array");
  Dataset rows;
  for (const auto& item : doc) {
    DataRow row;
    row.series = item.at("series").get<std::string>();
    row.x = number(item.at("x"));
    row.y = number(item.at("y"));
    if (!item.at("aux_k").is_null()) row.aux_k = item.at("aux_k").get<int>();
    row.aux_note = item.at("aux_note").get<std::string>();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string serialize(const Dataset& rows, Format format) {
  return format == Format::Csv ? to_csv(rows) : to_json(rows);
}

void write_dataset(const Dataset& rows, Format format, const std::string& path) {
  const std::string text = serialize(rows, format);
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
}

bool identical(const Dataset& lhs, const Dataset& rhs) {
  if (lhs.size() != rhs.size()) return false;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const auto& a = lhs[i];
    const auto& b = rhs[i];
    if (a.series != b.series || a.aux_k != b.aux_k || a.aux_note != b.aux_note) return false;
    if (!same_double(a.x, b.x) || !same_double(a.y, b.y)) return false;
  }
  return true;
}

std::vector<double> uniform_grid(double stop, double step) {
  if (!(step > 0.0) || !(stop >= 0.0)) throw std::invalid_argument("grid step must be positive");
  const auto count = static_cast<std::size_t>(std::floor(stop / step + 1e-9));
  std::vector<double> grid;
  for (std::size_t i = 0; i <= count; ++i) grid.push_back(std::min(stop, static_cast<double>(i) * step));
  if (grid.back() < stop - 1e-12) grid.push_back(stop);
  else grid.back() = stop;
  return grid;
}

void validate(const ReportSpec& spec) {
  const double n = spec.cfg.n_rx();
  if (spec.output_path.empty()) throw std::invalid_argument("output path must not be empty");
  for (double r : spec.r_grid)
    if (!(r >= 0.0) || r > n) throw std::invalid_argument("r grid must lie within [0, N]");
  for (double a : spec.alpha_list)
    if (!(a >= 0.0) || !std::isfinite(a)) throw std::invalid_argument("alpha values must be >= 0");
  switch (spec.command) {
    case Command::Curve:
      if (spec.r_grid.empty()) throw std::invalid_argument("curve needs a non-empty r grid");
      break;
    case Command::OracleCheck:
      if (spec.cfg.n_rx() > 4) throw std::invalid_argument("oracle-check supports N <= 4 only");
      if (!(spec.oracle.grid_step > 0.0) || spec.oracle.grid_step > 0.05)
        throw std::invalid_argument("oracle grid step must be in (0, 0.05]");
      break;
    case Command::Simulate:
      if (spec.sim.trials < 1000) throw std::invalid_argument("trials must be at least 1000");
      if (spec.sim.rho_points < 2) throw std::invalid_argument("rho grid needs at least two points");
      if (!(spec.sim.rho_stop_db - spec.sim.rho_start_db >= 20.0))
        throw std::invalid_argument("rho grid must span at least two decades (20 dB)");
      if (!(spec.sim.r >= 0.0) || spec.sim.r > n) throw std::invalid_argument("r must be in [0, N]");
      spec.sim.policy.validate();
      break;
    case Command::Figures:
      if (spec.fig.figure < 2 || spec.fig.figure > 5)
        throw std::invalid_argument("figure must be one of 2, 3, 4, 5");
      if (spec.fig.antennas < 1) throw std::invalid_argument("antenna count must be positive");
      if (!(spec.fig.r >= 0.0 && spec.fig.r <= 1.0))
        throw std::invalid_argument("SIMO/MISO multiplexing gain must be in [0, 1]");
      break;
  }
}

Dataset cmd_curve(const ReportSpec& spec) {
  validate(spec);
  Dataset rows;
  for (double alpha : alphas_of(spec)) append_curve_rows(rows, with_alpha(spec.cfg, alpha), spec.r_grid);
  append_no_csit_rows(rows, spec.cfg, spec.r_grid);
  return rows;
}

OracleCheckReport cmd_oracle_check(const ReportSpec& spec) {
  validate(spec);
  OracleCheckReport report;
  std::vector<double> probes;
  for (double r : spec.r_grid)
    if (r > 0.0) probes.push_back(r);
  if (probes.empty()) throw std::invalid_argument("oracle-check needs probes in (0, N]");

  for (double alpha : alphas_of(spec)) {
    const ChannelConfig cfg = with_alpha(spec.cfg, alpha);
    const DmtCurve curve = compute_dmt_curve(cfg);
    const double step = spec.oracle.grid_step;
    const double v_max = spec.oracle.v_max > 0.0 ? spec.oracle.v_max : default_v_max(cfg);
    const double tolerance = oracle_tolerance(cfg, step);
    const auto results = grid_oracle_sweep(cfg, probes, v_max, step, spec.oracle.workers);
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const double r = probes[i];
      const double closed = eval_dmt(curve, r);
      const double oracle = results[i].d_min;
      const double gap = (std::isinf(closed) && std::isinf(oracle)) ? 0.0 : std::abs(closed - oracle);
      const bool pass = gap <= tolerance + 1e-9;
      ++report.checked;
      if (!pass) ++report.failures;
      report.rows.push_back({tagged("closed_form", alpha), r, closed, owning_k(curve, r), "value"});
      report.rows.push_back({tagged("grid_oracle", alpha), r, oracle, std::nullopt, "value"});
      report.rows.push_back({tagged("abs_gap", alpha), r, gap, std::nullopt,
                             std::string(pass ? "pass" : "fail") + ";tol=" + format_number(tolerance)});
    }
  }
  return report;
}

Dataset cmd_simulate(const ReportSpec& spec) {
  validate(spec);
  const SimulationParams& sim = spec.sim;
  const std::vector<double> rho = db_grid(sim.rho_start_db, sim.rho_stop_db, sim.rho_points);
  SweepOptions options;
  options.calibration_batch = sim.calibration_batch;
  options.workers = sim.workers;
  options.rate_offset = sim.rate_offset;
  const OutageSweep sweep = run_sweep(spec.cfg, sim.r, rho, sim.trials, sim.policy, sim.seed, options);

  Dataset rows;
  for (std::size_t i = 0; i < sweep.rho_grid.size(); ++i) {
    const double x = sweep.rho_grid[i];
    rows.push_back({"p_out", x, sweep.p_out[i], std::nullopt,
                    "count=" + std::to_string(sweep.outage_counts[i])});
    rows.push_back({"ci_half_width", x, sweep.ci_half_width[i], std::nullopt, "95%"});
    rows.push_back({"trials", x, static_cast<double>(sweep.trials), std::nullopt, ""});
    rows.push_back({"kappa", x, sweep.kappa[i], std::nullopt, to_string(sweep.kappa_mode)});
  }
  const double slope = sweep.fit.defined ? sweep.fit.slope : std::nan("");
  rows.push_back({"fitted_slope", sweep.r, slope, std::nullopt,
                  "kappa_mode=" + to_string(sweep.kappa_mode) + ";t=" + format_number(sweep.t) +
                      ";rate_offset=" + format_number(sim.rate_offset) + ";points=" + std::to_string(sweep.fit.points) +
                      ";defined=" + (sweep.fit.defined ? "1" : "0") +
                      ";stderr=" + format_number(sweep.fit.defined ? sweep.fit.std_error : std::nan(""))});
  return rows;
}

Dataset cmd_figures(const ReportSpec& spec) {
  validate(spec);
  Dataset rows;
  switch (spec.fig.figure) {
    case 2: {
      const ChannelConfig cfg(3, 3, 0.0);
      const std::vector<double> r_grid = spec.r_grid.empty() ? uniform_grid(3.0, 0.01) : spec.r_grid;
      const std::vector<double> alphas =
          spec.alpha_list.empty() ? std::vector<double>{1.0 / 3.0, 0.5} : spec.alpha_list;
      for (double alpha : alphas) append_curve_rows(rows, with_alpha(cfg, alpha), r_grid);
      append_no_csit_rows(rows, cfg, r_grid);
      break;
    }
    case 3: {
      const ChannelConfig cfg(4, 2, 0.1);
      const std::vector<double> r_grid = spec.r_grid.empty() ? uniform_grid(2.0, 0.01) : spec.r_grid;
      append_curve_rows(rows, cfg, r_grid);
      append_no_csit_rows(rows, cfg, r_grid);
      break;
    }
    case 4:
      rows = figure_simo_miso(spec.fig);
      break;
    case 5:
      rows = figure_full_multiplexing(5, 3);
      break;
  }
  return rows;
}

}  // namespace dmtcsit
