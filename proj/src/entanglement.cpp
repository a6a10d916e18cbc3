#include "gaussnet/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gaussnet {
namespace {

double clamped_sqrt(double x, double scale, const char* what) {
  if (x >= 0.0) return std::sqrt(x);
  if (x >= -kDiscriminantTolerance * std::max(1.0, scale)) return 0.0;
  throw UnphysicalCovarianceError(std::string(what) + " is negative (" +
                                  std::to_string(x) + ")");
}

double nu_from_invariants(double dt, double det_v) {
  const double disc =
      clamped_sqrt(dt * dt - 4.0 * det_v, dt * dt, "symplectic discriminant");
  return clamped_sqrt((dt - disc) / 2.0, std::abs(dt),
                      "symplectic eigenvalue argument");
}

}  // namespace

double delta_tilde(const TwoModeBlocks& b) {
  return b.v1.determinant() + b.v3.determinant() - 2.0 * b.v2.determinant();
}

double min_symplectic_eigenvalue(const CovarianceMatrix& v) {
  return nu_from_invariants(delta_tilde(block_partition(v)), v.determinant());
}

double log_negativity_from_invariants(double dt, double det_v) {
  const double nu = nu_from_invariants(dt, det_v);
  if (nu <= 0.0) {
    throw UnphysicalCovarianceError("symplectic eigenvalue is zero");
  }
  return std::max(0.0, -std::log(2.0 * nu));
}

double log_negativity(const CovarianceMatrix& v) {
  return log_negativity_from_invariants(delta_tilde(block_partition(v)),
                                        v.determinant());
}

double purity(const CovarianceMatrix& v) {
  if (!v.has_mode_structure()) {
    throw DimensionError("purity needs a 2N x 2N covariance");
  }
  const double det = v.determinant();
  if (!(det > 0.0)) {
    throw UnphysicalCovarianceError("det V = " + std::to_string(det) +
                                    " is not positive");
  }
  return 1.0 / (std::pow(2.0, v.n_modes()) * std::sqrt(det));
}

EntanglementRecord entanglement_record(const CovarianceMatrix& v) {
  EntanglementRecord r{};
  r.delta_tilde = delta_tilde(block_partition(v));
  r.det_v = v.determinant();
  r.nu = nu_from_invariants(r.delta_tilde, r.det_v);
  if (r.nu <= 0.0) throw UnphysicalCovarianceError("symplectic eigenvalue is zero");
  r.signed_log_negativity = -std::log(2.0 * r.nu);
  r.log_negativity = std::max(0.0, r.signed_log_negativity);
  r.purity = purity(v);
  return r;
}

std::vector<Transition> detect_transitions(const std::vector<double>& times,
                                           const std::vector<double>& en) {
  if (times.size() != en.size()) {
    throw DimensionError("E_N series and time grid differ in length");
  }
  std::vector<Transition> out;
  for (std::size_t i = 1; i < en.size(); ++i) {
    const bool was = en[i - 1] > 0.0;
    const bool is = en[i] > 0.0;
    if (was == is) continue;
    // Interpolate E_N linearly; the crossing sits where it reaches zero.
    const double lo = en[i - 1], hi = en[i];
    const double frac = lo / (lo - hi);
    const double t = times[i - 1] + frac * (times[i] - times[i - 1]);
    out.push_back({t, is ? TransitionKind::Birth : TransitionKind::Death});
  }
  return out;
}

const char* to_string(TransitionKind kind) {
  return kind == TransitionKind::Birth ? "birth" : "death";
}

}  // namespace gaussnet
