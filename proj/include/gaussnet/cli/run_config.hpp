#pragma once

// Run configuration shared by the command-line subcommands.
//
// Settings come from an optional flat `key = value` file ('#' starts a
// comment) and from command-line flags with the same names; flags win.
// All times and rates are in kappa-normalized units.

#include <optional>
#include <string>
#include <vector>

#include "gaussnet/network_models.hpp"

namespace gaussnet::cli {

enum class NetworkKind { Ideal, Realistic };

enum class FeedbackSource { Explicit, Riccati };

struct RunConfig {
  NetworkKind network = NetworkKind::Ideal;
  CavityKind cavity1 = CavityKind::Dispersive;
  CavityKind cavity2 = CavityKind::Damped;
  double m = 0.2;
  double kappa = 1.0;
  double gain = 0.0;
  double alpha = 1.0;
  double tau = 0.01;
  double a4 = 0.01;
  FeedbackSource feedback_source = FeedbackSource::Riccati;
  Eigen::Vector4d feedback = Eigen::Vector4d::Zero();
  // V0 = v0_scale * I unless an explicit matrix is given.
  double v0_scale = 2.0;
  std::optional<RealMatrix> v0_matrix;
  double t_end = kDefaultEndTime;
  double dt = kDefaultTimeStep;
  int stride = 10;
  std::string out;  // empty: standard output
  bool check_dual = false;

  /// Throws ConfigurationError on inconsistent or non-finite settings.
  void validate() const;
};

/// Keys accepted by apply_setting() and config files.
const std::vector<std::string>& config_keys();

/// Applies one `key = value` setting. Unknown keys are errors.
void apply_setting(RunConfig& cfg, const std::string& key,
                   const std::string& value);

/// Parses config-file text into `cfg`.
void apply_config_text(RunConfig& cfg, const std::string& text);
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Network parameters with the feedback vector resolved (Riccati design on
/// the ideal network with the configured cavities when requested).
NetworkParams resolve_network(const RunConfig& cfg);

/// Drift/diffusion of the configured network.
DriftDiffusion network_dynamics(const RunConfig& cfg, const NetworkParams& p);

/// Initial covariance; rejects unphysical cavity states.
CovarianceMatrix initial_covariance(const RunConfig& cfg);

enum class SweepParameter { Gain, Tau, Alpha };

struct SweepSpec {
  SweepParameter parameter = SweepParameter::Gain;
  std::vector<double> values;
  RunConfig base;

  void validate() const;
};

SweepParameter parse_sweep_parameter(const std::string& text);
const char* to_string(SweepParameter p);

/// Comma- or whitespace-separated list of reals.
std::vector<double> parse_number_list(const std::string& text);

}  // namespace gaussnet::cli
