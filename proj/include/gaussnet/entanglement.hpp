#pragma once

// Two-mode Gaussian entanglement and purity metrics. Logarithms are natural.

#include <vector>

#include "gaussnet/gaussian_core.hpp"

namespace gaussnet {

/// Roundoff allowance (relative to the scale of the argument) before a
/// negative discriminant is treated as unphysical.
inline constexpr double kDiscriminantTolerance = 1e-12;

struct EntanglementRecord {
  double delta_tilde;
  double det_v;
  double nu;
  double log_negativity;
  /// -ln(2 nu) before clamping at zero; crosses zero at transitions.
  double signed_log_negativity;
  double purity;
};

/// det V1 + det V3 - 2 det V2.
double delta_tilde(const TwoModeBlocks& blocks);

/// Smallest symplectic eigenvalue of the partially transposed covariance,
/// nu = sqrt((Dt - sqrt(Dt^2 - 4 det V)) / 2).
double min_symplectic_eigenvalue(const CovarianceMatrix& v);

/// E_N = max(0, -ln(2 nu)).
double log_negativity(const CovarianceMatrix& v);

/// Tr(rho^2) = 1 / (2^N sqrt(det V)); 1 / (4 sqrt(det V)) for two modes.
double purity(const CovarianceMatrix& v);

EntanglementRecord entanglement_record(const CovarianceMatrix& v);

/// Same quantities from the (Dt, det V) pair alone.
double log_negativity_from_invariants(double delta_tilde, double det_v);

enum class TransitionKind { Birth, Death };

struct Transition {
  double time;
  TransitionKind kind;
};

/// Times at which the series leaves (birth) or returns to (death) the
/// region > 0, located by linear interpolation between adjacent samples.
/// A clamped E_N series puts each event on the zero-valued sample; the
/// signed log-negativity gives the interpolated crossing.
std::vector<Transition> detect_transitions(const std::vector<double>& times,
                                           const std::vector<double>& en);

const char* to_string(TransitionKind kind);

}  // namespace gaussnet
