#include "gaussnet/cli/commands.hpp"

#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>

#include "gaussnet/cli/csv.hpp"
#include "gaussnet/entanglement.hpp"

namespace gaussnet::cli {
namespace {

CovarianceMatrix cavity_block(const RunConfig& cfg, const CovarianceMatrix& v) {
  return cfg.network == NetworkKind::Realistic ? reduce_cavity_covariance(v)
                                               : v;
}

Trajectory cavity_trajectory(const RunConfig& cfg) {
  const NetworkParams p = resolve_network(cfg);
  const DriftDiffusion dd = network_dynamics(cfg, p);
  const CovarianceMatrix v0 = initial_covariance(cfg);
  Trajectory traj = propagate_lyapunov(dd, v0, cfg.t_end, cfg.dt, cfg.stride);
  if (cfg.network == NetworkKind::Realistic) {
    for (auto& v : traj.covariances) v = reduce_cavity_covariance(v);
  }
  return traj;
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::filesystem::path write_file(const std::filesystem::path& dir,
                                 const std::string& name,
                                 const std::string& content) {
  const std::filesystem::path path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigurationError("cannot write " + path.string());
  out << content;
  return path;
}

RunConfig reference_config(CavityKind first, CavityKind second) {
  RunConfig cfg;
  cfg.cavity1 = first;
  cfg.cavity2 = second;
  cfg.m = 0.2;
  cfg.kappa = 1.0;
  cfg.v0_scale = 2.0;
  cfg.t_end = 20.0;
  return cfg;
}

struct Pairing {
  const char* name;
  CavityKind first;
  CavityKind second;
};

constexpr Pairing kPairings[] = {
    {"dispersive_damped", CavityKind::Dispersive, CavityKind::Damped},
    {"damped_damped", CavityKind::Damped, CavityKind::Damped},
};

std::vector<double> gain_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 20; ++i) g.push_back(0.05 * i);
  return g;
}

std::string trajectory_text(const RunConfig& cfg) {
  std::ostringstream out;
  write_trajectory_csv(out, cavity_trajectory(cfg));
  return out.str();
}

std::string phase_plane_text(const RunConfig& cfg) {
  const Trajectory traj = cavity_trajectory(cfg);
  std::ostringstream out;
  out << "t,delta_tilde,detV,EN\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const EntanglementRecord r = entanglement_record(traj.covariances[k]);
    write_csv_row(out, {traj.times[k], r.delta_tilde, r.det_v,
                        r.log_negativity});
  }
  return out.str();
}

// E_N over the (delta_tilde, det V) plane, skipping pairs that no
// covariance matrix can realize.
std::string entangled_region_text() {
  std::ostringstream out;
  out << "delta_tilde,detV,EN\n";
  for (int i = 0; i <= 40; ++i) {
    const double dt = 0.25 * i;
    for (int j = 0; j <= 40; ++j) {
      const double det = 0.5 * j;
      if (dt * dt < 4.0 * det || det <= 0.0) continue;
      write_csv_row(out, {dt, det, log_negativity_from_invariants(dt, det)});
    }
  }
  return out.str();
}

std::string sweep_text(const SweepSpec& spec) {
  std::ostringstream out;
  cmd_sweep(spec, out);
  return out.str();
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const NumericalError*>(&e) ||
      dynamic_cast<const InternalConsistencyError*>(&e) ||
      dynamic_cast<const UnphysicalCovarianceError*>(&e)) {
    return kExitNumerical;
  }
  if (dynamic_cast<const Error*>(&e)) return kExitUsage;
  return kExitNumerical;
}

void cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  write_trajectory_csv(out, cavity_trajectory(cfg));
}

SteadyReport steady_state(const RunConfig& cfg) {
  const NetworkParams p = resolve_network(cfg);
  const CovarianceMatrix v =
      cavity_block(cfg, steady_lyapunov(network_dynamics(cfg, p)));
  const EntanglementRecord r = entanglement_record(v);
  return SteadyReport{v, r.log_negativity, r.purity, r.delta_tilde, r.det_v};
}

void cmd_steady(const RunConfig& cfg, std::ostream& out) {
  const SteadyReport s = steady_state(cfg);
  out << "EN," << format_number(s.log_negativity) << '\n'
      << "P," << format_number(s.purity) << '\n'
      << "delta_tilde," << format_number(s.delta_tilde) << '\n'
      << "detV," << format_number(s.det_v) << '\n';
  for (int i = 0; i < 4; ++i) {
    out << 'V' << i + 1;
    for (int j = 0; j < 4; ++j) {
      out << ',' << format_number(s.cavity_covariance.matrix()(i, j));
    }
    out << '\n';
  }
}

RiccatiSolution design(const RunConfig& cfg) {
  cfg.validate();
  return design_ideal_feedback(CavityParams{cfg.m, cfg.kappa, cfg.cavity1},
                               CavityParams{cfg.m, cfg.kappa, cfg.cavity2});
}

void cmd_design(const RunConfig& cfg, std::ostream& out) {
  const RiccatiSolution sol = design(cfg);
  out << "f:";
  for (int i = 0; i < sol.feedback.size(); ++i) {
    out << ' ' << fixed(sol.feedback(i), 4);
  }
  out << '\n'
      << "det(V_inf): " << fixed(sol.determinant, 8) << '\n'
      << "residual: " << format_number(sol.residual) << '\n'
      << "iterations: " << sol.iterations << '\n';
}

std::vector<SweepPoint> sweep(const SweepSpec& spec) {
  spec.validate();
  RunConfig base = spec.base;
  // The feedback vector is designed once; it does not depend on the swept
  // parameters.
  const NetworkParams resolved = resolve_network(base);
  base.feedback_source = FeedbackSource::Explicit;
  base.feedback = resolved.feedback;

  auto evaluate = [&](double value) {
    SweepPoint pt{value, "error", std::nullopt, std::nullopt};
    RunConfig cfg = base;
    switch (spec.parameter) {
      case SweepParameter::Gain:
        cfg.gain = value;
        break;
      case SweepParameter::Tau:
        cfg.tau = value;
        break;
      case SweepParameter::Alpha:
        cfg.alpha = value;
        break;
    }
    try {
      const DriftDiffusion dd = network_dynamics(cfg, resolve_network(cfg));
      const StabilityClass sc = stability_class(dd.a);
      pt.status = to_string(sc.kind);
      if (sc.kind == Stability::Stable) {
        const CovarianceMatrix v = cavity_block(cfg, steady_lyapunov(dd));
        pt.log_negativity = log_negativity(v);
        pt.purity = purity(v);
      }
    } catch (const Error&) {
      pt.status = "error";
    }
    return pt;
  };

  std::vector<std::future<SweepPoint>> jobs;
  jobs.reserve(spec.values.size());
  for (double v : spec.values) {
    jobs.push_back(std::async(std::launch::async, evaluate, v));
  }
  std::vector<SweepPoint> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

void cmd_sweep(const SweepSpec& spec, std::ostream& out) {
  const std::vector<SweepPoint> points = sweep(spec);
  out << to_string(spec.parameter) << ",EN,P,status\n";
  for (const SweepPoint& p : points) {
    write_csv_row(out, {p.value, p.log_negativity, p.purity}, p.status);
  }
}

std::vector<std::filesystem::path> cmd_figure(int id,
                                              const std::filesystem::path& dir) {
  if (id < 2 || id > 6) {
    throw ConfigurationError("unknown figure id " + std::to_string(id) +
                             " (expected 2 to 6)");
  }
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const std::string prefix = "fig" + std::to_string(id) + "_";

  switch (id) {
    case 2:
      for (const Pairing& pr : kPairings) {
        written.push_back(write_file(dir, prefix + pr.name + ".csv",
                                     trajectory_text(reference_config(pr.first, pr.second))));
      }
      break;
    case 3:
      for (const Pairing& pr : kPairings) {
        written.push_back(write_file(dir, prefix + pr.name + ".csv",
                                     phase_plane_text(reference_config(pr.first, pr.second))));
      }
      written.push_back(write_file(dir, prefix + "entangled_region.csv",
                                   entangled_region_text()));
      break;
    case 4:
      for (const Pairing& pr : kPairings) {
        SweepSpec spec{SweepParameter::Gain, gain_grid(),
                       reference_config(pr.first, pr.second)};
        written.push_back(
            write_file(dir, prefix + pr.name + ".csv", sweep_text(spec)));
      }
      break;
    case 5:
      for (const Pairing& pr : kPairings) {
        RunConfig cfg = reference_config(pr.first, pr.second);
        cfg.gain = 1.0;
        written.push_back(write_file(dir, prefix + pr.name + ".csv",
                                     phase_plane_text(cfg)));
      }
      break;
    case 6: {
      RunConfig base = reference_config(CavityKind::Dispersive, CavityKind::Damped);
      base.network = NetworkKind::Realistic;
      base.a4 = 0.01;
      for (double tau : {0.01, 0.2, 0.4, 0.6}) {
        RunConfig cfg = base;
        cfg.tau = tau;
        cfg.alpha = 1.0;
        written.push_back(write_file(dir, prefix + "tau_" + format_number(tau) + ".csv",
                                     sweep_text({SweepParameter::Gain, gain_grid(), cfg})));
      }
      for (double alpha : {1.0, 0.99, 0.95, 0.90}) {
        RunConfig cfg = base;
        cfg.tau = 0.01;
        cfg.alpha = alpha;
        written.push_back(write_file(dir, prefix + "alpha_" + format_number(alpha) + ".csv",
                                     sweep_text({SweepParameter::Gain, gain_grid(), cfg})));
      }
      break;
    }
  }
  return written;
}

}  // namespace gaussnet::cli
