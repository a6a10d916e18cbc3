#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gaussnet/cli/run_config.hpp"

namespace gaussnet::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Maps a library exception to the tool's exit code.
int exit_code_for(const std::exception& e);

/// Integrates the configured network and writes the cavity trajectory CSV.
void cmd_simulate(const RunConfig& cfg, std::ostream& out);

struct SteadyReport {
  CovarianceMatrix cavity_covariance;
  double log_negativity;
  double purity;
  double delta_tilde;
  double det_v;
};

/// Steady cavity state; throws NoSteadyStateError for non-Hurwitz drift.
SteadyReport steady_state(const RunConfig& cfg);
void cmd_steady(const RunConfig& cfg, std::ostream& out);

/// Riccati design for the configured cavities; prints f and det(V_inf).
RiccatiSolution design(const RunConfig& cfg);
void cmd_design(const RunConfig& cfg, std::ostream& out);

struct SweepPoint {
  double value;
  std::string status;  // stable, marginal, unstable or error
  std::optional<double> log_negativity;
  std::optional<double> purity;
};

/// Evaluates the points concurrently; results are in input order.
std::vector<SweepPoint> sweep(const SweepSpec& spec);
void cmd_sweep(const SweepSpec& spec, std::ostream& out);

/// Writes the datasets of figure `id` (2 to 6) into `dir` and returns the
/// written paths. Unknown ids throw ConfigurationError.
std::vector<std::filesystem::path> cmd_figure(int id,
                                              const std::filesystem::path& dir);

}  // namespace gaussnet::cli
