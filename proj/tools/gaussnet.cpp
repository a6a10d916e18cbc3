// Command-line driver for the two-cavity direct-feedback network.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>

#include "CLI11.hpp"
#include "gaussnet/cli/commands.hpp"

namespace {

using gaussnet::cli::RunConfig;

constexpr const char* kUnitsNote =
    "Times and rates are in kappa-normalized units (t in 1/kappa).";

struct ConfigOptions {
  std::string config_file;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
};

void add_config_options(CLI::App* cmd, ConfigOptions& opts) {
  cmd->add_option("--config", opts.config_file,
                  "flat 'key = value' config file; flags override it");
  const std::map<std::string, std::string> help = {
      {"network", "ideal | realistic"},
      {"cavity1", "damped | dispersive"},
      {"cavity2", "damped | dispersive"},
      {"m", "cavity Hamiltonian asymmetry m"},
      {"kappa", "cavity coupling rate"},
      {"gain", "feedback gain g"},
      {"f", "'riccati' or four comma-separated feedback coefficients"},
      {"alpha", "beam-splitter transmittance (realistic network)"},
      {"tau", "detector time constant (realistic network)"},
      {"a4", "detector noise variance (realistic network)"},
      {"v0", "initial covariance: scalar s for s*I, or row-major matrix"},
      {"t-end", "end time"},
      {"dt", "RK4 step"},
      {"stride", "write every stride-th step"},
      {"out", "output path (default: standard output)"},
      {"check-dual", "cross-check closed form against cascade algebra"},
  };
  for (const std::string& key : gaussnet::cli::config_keys()) {
    opts.options[key] =
        cmd->add_option("--" + key, opts.values[key], help.at(key));
  }
}

RunConfig build_config(const ConfigOptions& opts) {
  RunConfig cfg;
  if (!opts.config_file.empty()) {
    gaussnet::cli::apply_config_file(cfg, opts.config_file);
  }
  for (const auto& [key, option] : opts.options) {
    if (option->count() > 0) {
      gaussnet::cli::apply_setting(cfg, key, opts.values.at(key));
    }
  }
  return cfg;
}

template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw gaussnet::ConfigurationError("cannot open output file '" + path + "'");
  }
  fn(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("Gaussian two-cavity feedback network simulator. ") +
               kUnitsNote};
  app.require_subcommand(1);

  ConfigOptions sim_opts, steady_opts, design_opts, sweep_opts;
  auto* simulate = app.add_subcommand(
      "simulate", "integrate the covariance and write the trajectory CSV");
  add_config_options(simulate, sim_opts);
  auto* steady = app.add_subcommand("steady", "steady-state cavity covariance");
  add_config_options(steady, steady_opts);
  auto* design = app.add_subcommand(
      "design", "Riccati design of the feedback vector for the ideal network");
  add_config_options(design, design_opts);
  auto* sweep = app.add_subcommand(
      "sweep", "steady E_N and purity over a list of g, tau or alpha values");
  add_config_options(sweep, sweep_opts);
  std::string sweep_param = "g";
  std::string sweep_values;
  sweep->add_option("--param", sweep_param, "g | tau | alpha");
  sweep->add_option("--values", sweep_values, "comma-separated values")
      ->required();

  auto* figure = app.add_subcommand("figure", "write the datasets of a figure");
  int figure_id = 0;
  std::string figure_dir = ".";
  figure->add_option("--id", figure_id, "figure number (2-6)")->required();
  figure->add_option("--out-dir", figure_dir, "output directory");

  for (auto* cmd : {simulate, steady, design, sweep, figure}) {
    cmd->footer(kUnitsNote);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return gaussnet::cli::kExitUsage;
  }

  try {
    if (*simulate) {
      const RunConfig cfg = build_config(sim_opts);
      with_output(cfg.out, [&](std::ostream& out) {
        gaussnet::cli::cmd_simulate(cfg, out);
      });
    } else if (*steady) {
      const RunConfig cfg = build_config(steady_opts);
      with_output(cfg.out, [&](std::ostream& out) {
        gaussnet::cli::cmd_steady(cfg, out);
      });
    } else if (*design) {
      const RunConfig cfg = build_config(design_opts);
      with_output(cfg.out, [&](std::ostream& out) {
        gaussnet::cli::cmd_design(cfg, out);
      });
    } else if (*sweep) {
      gaussnet::cli::SweepSpec spec;
      spec.base = build_config(sweep_opts);
      spec.parameter = gaussnet::cli::parse_sweep_parameter(sweep_param);
      spec.values = gaussnet::cli::parse_number_list(sweep_values);
      with_output(spec.base.out, [&](std::ostream& out) {
        gaussnet::cli::cmd_sweep(spec, out);
      });
    } else if (*figure) {
      for (const auto& path : gaussnet::cli::cmd_figure(figure_id, figure_dir)) {
        std::cout << path.string() << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gaussnet::cli::exit_code_for(e);
  }
  return gaussnet::cli::kExitSuccess;
}
