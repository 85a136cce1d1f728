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

#include <cstdlib>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dmtcsit/report.hpp"

using namespace dmtcsit;

namespace {

constexpr int kUsageError = 2;

struct ChannelArgs {
  int m = 2;
  int n = 2;
  double alpha = 0.0;
};

void add_channel_options(CLI::App* cmd, ChannelArgs& args) {
  cmd->add_option("--m", args.m, "transmit antennas")->check(CLI::PositiveNumber);
  cmd->add_option("--n", args.n, "receive antennas")->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", args.alpha, "CSIT quality exponent")->check(CLI::NonNegativeNumber);
}

void add_output_options(CLI::App* cmd, ReportSpec& spec, std::string& format) {
  cmd->add_option("--out", spec.output_path, "output path, '-' for stdout");
  cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DMT curves, exponent oracle checks and outage simulations for MIMO links with imperfect CSIT"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  ReportSpec spec;
  ChannelArgs channel;
  std::string format = "csv";
  double r_step = 0.05;
  std::string kappa_mode = "calibrated";

  auto* curve = app.add_subcommand("curve", "closed-form DMT segments and sampled curves");
  add_channel_options(curve, channel);
  curve->add_option("--alpha-list", spec.alpha_list, "several alpha values (overrides --alpha)");
  curve->add_option("--r-step", r_step, "sampling step on [0, N]")->check(CLI::PositiveNumber);
  add_output_options(curve, spec, format);

  auto* check = app.add_subcommand("oracle-check", "compare the closed form against the grid oracle");
  add_channel_options(check, channel);
  check->add_option("--alpha-list", spec.alpha_list, "several alpha values (overrides --alpha)");
  check->add_option("--r-step", r_step, "probe step on (0, N]")->check(CLI::PositiveNumber);
  check->add_option("--grid-step", spec.oracle.grid_step, "exponent grid step");
  check->add_option("--vmax", spec.oracle.v_max, "exponent grid ceiling (0: automatic)");
  check->add_option("--workers", spec.oracle.workers, "worker threads (0: all cores)");
  add_output_options(check, spec, format);

  auto* sim = app.add_subcommand("simulate", "Monte Carlo outage sweep over SNR");
  add_channel_options(sim, channel);
  sim->add_option("--r", spec.sim.r, "multiplexing gain");
  sim->add_option("--rho-start-db", spec.sim.rho_start_db, "first SNR point in dB");
  sim->add_option("--rho-stop-db", spec.sim.rho_stop_db, "last SNR point in dB");
  sim->add_option("--rho-points", spec.sim.rho_points, "number of SNR points");
  sim->add_option("--trials", spec.sim.trials, "trials per SNR point");
  sim->add_option("--t", spec.sim.policy.t, "power adaptation damping in [0, 1)");
  sim->add_option("--kappa-mode", kappa_mode, "calibrated or analytic")
      ->check(CLI::IsMember({"calibrated", "analytic"}));
  sim->add_option("--rate-offset", spec.sim.rate_offset, "fixed rate in bits added to r log2(rho)")
      ->check(CLI::NonNegativeNumber);
  sim->add_option("--calibration-batch", spec.sim.calibration_batch, "draws for kappa calibration");
  sim->add_option("--seed", spec.sim.seed, "root seed");
  sim->add_option("--workers", spec.sim.workers, "worker threads (0: all cores)");
  add_output_options(sim, spec, format);

  auto* figs = app.add_subcommand("figures", "datasets for the reference figures");
  figs->add_option("--fig", spec.fig.figure, "figure number")->required()->check(CLI::IsMember({2, 3, 4, 5}));
  figs->add_option("--k", spec.fig.antennas, "antennas for the SIMO/MISO figure")->check(CLI::PositiveNumber);
  figs->add_option("--r", spec.fig.r, "multiplexing gain for the SIMO/MISO figure");
  figs->add_option("--r-step", r_step, "sampling step for the MIMO curve figures")->check(CLI::PositiveNumber);
  add_output_options(figs, spec, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    spec.format = parse_format(format);
    spec.cfg = ChannelConfig(channel.m, channel.n, channel.alpha);
    if (curve->parsed() || check->parsed()) spec.r_grid = uniform_grid(spec.cfg.n_rx(), r_step);

    if (curve->parsed()) {
      spec.command = Command::Curve;
      write_dataset(cmd_curve(spec), spec.format, spec.output_path);
    } else if (check->parsed()) {
      spec.command = Command::OracleCheck;
      const OracleCheckReport report = cmd_oracle_check(spec);
      write_dataset(report.rows, spec.format, spec.output_path);
      std::cerr << report.checked - report.failures << "/" << report.checked << " probes within tolerance\n";
      return report.all_pass() ? EXIT_SUCCESS : EXIT_FAILURE;
    } else if (sim->parsed()) {
      spec.command = Command::Simulate;
      spec.sim.policy.kappa_mode = parse_kappa_mode(kappa_mode);
      write_dataset(cmd_simulate(spec), spec.format, spec.output_path);
    } else {
      spec.command = Command::Figures;
      if (figs->count("--r-step") != 0) {
        const int n = spec.fig.figure == 2 ? 3 : 2;
        spec.r_grid = uniform_grid(n, r_step);
      }
      write_dataset(cmd_figures(spec), spec.format, spec.output_path);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
