#include "gaussnet/cli/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>


namespace gaussnet::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() ||
      !std::isfinite(x)) {
    throw ConfigurationError("'" + key + "' expects a finite number, got '" +
                             text + "'");
  }
  return x;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigurationError("'" + key + "' expects true or false, got '" +
                           text + "'");
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::string spaced = text;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::istringstream in(spaced);
  std::vector<double> out;
  std::string token;
  while (in >> token) out.push_back(parse_number("list", token));
  return out;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "network", "cavity1", "cavity2", "m",      "kappa", "gain",
      "f",       "alpha",   "tau",     "a4",     "v0",    "t-end",
      "dt",      "stride",  "out",     "check-dual"};
  return keys;
}

void apply_setting(RunConfig& cfg, const std::string& raw_key,
                   const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key == "network") {
    if (value == "ideal") {
      cfg.network = NetworkKind::Ideal;
    } else if (value == "realistic") {
      cfg.network = NetworkKind::Realistic;
    } else {
      throw ConfigurationError("network must be ideal or realistic, got '" +
                               value + "'");
    }
  } else if (key == "cavity1") {
    cfg.cavity1 = parse_cavity_kind(value);
  } else if (key == "cavity2") {
    cfg.cavity2 = parse_cavity_kind(value);
  } else if (key == "m") {
    cfg.m = parse_number(key, value);
  } else if (key == "kappa") {
    cfg.kappa = parse_number(key, value);
  } else if (key == "gain") {
    cfg.gain = parse_number(key, value);
  } else if (key == "alpha") {
    cfg.alpha = parse_number(key, value);
  } else if (key == "tau") {
    cfg.tau = parse_number(key, value);
  } else if (key == "a4") {
    cfg.a4 = parse_number(key, value);
  } else if (key == "f") {
    if (value == "riccati") {
      cfg.feedback_source = FeedbackSource::Riccati;
    } else {
      const std::vector<double> f = parse_number_list(value);
      if (f.size() != 4) {
        throw ConfigurationError("f expects 'riccati' or four numbers");
      }
      cfg.feedback_source = FeedbackSource::Explicit;
      cfg.feedback = Eigen::Vector4d(f[0], f[1], f[2], f[3]);
    }
  } else if (key == "v0") {
    const std::vector<double> v = parse_number_list(value);
    if (v.size() == 1) {
      cfg.v0_scale = v[0];
      cfg.v0_matrix.reset();
    } else if (v.size() == 16 || v.size() == 25) {
      const int n = v.size() == 16 ? 4 : 5;
      RealMatrix m(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m(i, j) = v[i * n + j];
      }
      cfg.v0_matrix = m;
    } else {
      throw ConfigurationError(
          "v0 expects a scalar or a row-major 4x4 / 5x5 matrix");
    }
  } else if (key == "t-end") {
    cfg.t_end = parse_number(key, value);
  } else if (key == "dt") {
    cfg.dt = parse_number(key, value);
  } else if (key == "stride") {
    const double s = parse_number(key, value);
    if (s < 1 || s != std::floor(s) || s > 1e9) {
      throw ConfigurationError("stride must be a positive integer");
    }
    cfg.stride = static_cast<int>(s);
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "check-dual") {
    cfg.check_dual = parse_bool(key, value);
  } else {
    throw ConfigurationError("unknown configuration key '" + key + "'");
  }
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigurationError("config line " + std::to_string(lineno) +
                               ": expected 'key = value'");
    }
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  apply_config_text(cfg, text.str());
}

void RunConfig::validate() const {
  for (double x : {m, kappa, gain, alpha, tau, a4, v0_scale, t_end, dt}) {
    if (!std::isfinite(x)) {
      throw ConfigurationError("numeric settings must be finite");
    }
  }
  if (!(dt > 0.0)) throw ConfigurationError("dt must be > 0");
  if (t_end < 0.0) throw ConfigurationError("t-end must be >= 0");
  if (t_end > 0.0 && !(dt < t_end)) {
    throw ConfigurationError("dt must be smaller than t-end");
  }
  if (stride < 1) throw ConfigurationError("stride must be >= 1");
  CavityParams{m, kappa, cavity1}.validate();
  if (network == NetworkKind::Realistic) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      throw ConfigurationError("alpha must lie in (0, 1]");
    }
    DetectorParams::low_pass(tau, a4).validate();
  }
  if (v0_matrix) {
    const int want = network == NetworkKind::Ideal ? 4 : 5;
    if (v0_matrix->rows() != want) {
      throw ConfigurationError("explicit v0 must be " + std::to_string(want) +
                               " x " + std::to_string(want) +
                               " for this network");
    }
  }
}

NetworkParams resolve_network(const RunConfig& cfg) {
  cfg.validate();
  NetworkParams p;
  p.cavity1 = CavityParams{cfg.m, cfg.kappa, cfg.cavity1};
  p.cavity2 = CavityParams{cfg.m, cfg.kappa, cfg.cavity2};
  p.gain = cfg.gain;
  p.transmittance = cfg.network == NetworkKind::Realistic ? cfg.alpha : 1.0;
  p.detector = DetectorParams::low_pass(cfg.tau, cfg.a4);
  if (cfg.feedback_source == FeedbackSource::Explicit) {
    p.feedback = cfg.feedback;
  } else {
    p.feedback = design_ideal_feedback(p.cavity1, p.cavity2).feedback;
  }
  return p;
}

DriftDiffusion network_dynamics(const RunConfig& cfg, const NetworkParams& p) {
  return cfg.network == NetworkKind::Ideal
             ? build_ideal(p, cfg.check_dual)
             : build_realistic(p, cfg.check_dual);
}

CovarianceMatrix initial_covariance(const RunConfig& cfg) {
  const int dim = cfg.network == NetworkKind::Ideal ? 4 : 5;
  RealMatrix v = cfg.v0_matrix.value_or(
      cfg.v0_scale * RealMatrix::Identity(dim, dim));
  try {
    const CovarianceMatrix full(v);
    const CovarianceMatrix cavity =
        dim == 4 ? full : reduce_cavity_covariance(full);
    if (!is_physical(cavity) ||
        (dim == 5 && full.matrix().selfadjointView<Eigen::Lower>()
                             .eigenvalues()
                             .minCoeff() < -kPhysicalityTolerance)) {
      throw ConfigurationError("initial covariance is not physical");
    }
    return full;
  } catch (const ConfigurationError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigurationError(std::string("invalid initial covariance: ") +
                             e.what());
  }
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigurationError("sweep needs at least one value");
  if (values.size() > 1) {
    const bool up = values[1] > values[0];
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (up ? !(values[i] > values[i - 1]) : !(values[i] < values[i - 1])) {
        throw ConfigurationError("sweep values must be strictly ordered");
      }
    }
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw ConfigurationError("sweep values must be finite");
  }
  base.validate();
}

SweepParameter parse_sweep_parameter(const std::string& text) {
  if (text == "g" || text == "gain") return SweepParameter::Gain;
  if (text == "tau") return SweepParameter::Tau;
  if (text == "alpha") return SweepParameter::Alpha;
  throw ConfigurationError("sweep parameter must be g, tau or alpha");
}

const char* to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::Gain:
      return "g";
    case SweepParameter::Tau:
      return "tau";
    case SweepParameter::Alpha:
      return "alpha";
  }
  return "?";
}

}  // namespace gaussnet::cli
