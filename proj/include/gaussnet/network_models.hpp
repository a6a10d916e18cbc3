#pragma once

// Components and complete models of the two-cavity direct-feedback network.
//
// Mode order is cavity 1, cavity 2 and, for the realistic network, the
// detector. Channel 0 is the field that links the cavities, channel 1 the
// vacuum entering at the lossy beam splitter, and channel 2 the detector
// noise.

#include <Eigen/Dense>

#include "gaussnet/dynamics.hpp"
#include "gaussnet/slh.hpp"

namespace gaussnet {

/// Tolerance of the closed-form versus cascade cross-check.
inline constexpr double kDualConstructionTolerance = 1e-10;

enum class CavityKind { Damped, Dispersive };

const char* to_string(CavityKind kind);
CavityKind parse_cavity_kind(const std::string& text);

struct CavityParams {
  double m = 0.2;      // Hamiltonian (m q^2 + p^2) / 2
  double kappa = 1.0;  // coupling rate
  CavityKind kind = CavityKind::Damped;

  void validate() const;
  /// sqrt(kappa) (1, i) for a damped cavity, (sqrt(kappa), 0) for a
  /// dispersive one.
  Eigen::Vector2cd coupling() const;
  Eigen::Matrix2d hamiltonian() const;
};

/// First-order classical detector d xi = a1 xi dt + a2 dw,
/// dy = a3 xi dt + dv with E[dv^2] = a4 dt.
struct DetectorParams {
  double tau = 0.01;
  double a1 = -100.0;
  double a2 = 100.0;
  double a3 = 1.0;
  double a4 = 0.01;

  /// Low-pass filter: a1 = -1/tau, a2 = 1/tau, a3 = 1.
  static DetectorParams low_pass(double tau, double a4);
  void validate() const;
};

struct NetworkParams {
  CavityParams cavity1{0.2, 1.0, CavityKind::Dispersive};
  CavityParams cavity2{0.2, 1.0, CavityKind::Damped};
  double gain = 0.0;
  Eigen::Vector4d feedback = Eigen::Vector4d::Zero();
  double transmittance = 1.0;  // alpha; channel loss is reported as 1 - alpha
  DetectorParams detector;

  void validate() const;
  /// l = (l1^T, l2^T)^T.
  ComplexVector coupling() const;
};

/// Degenerate parametric amplifier: H = Delta a*a + (i/2)(eps e^{i phi} a*^2
/// - eps e^{-i phi} a^2).
struct DpaParams {
  double detuning;
  double pump;
  double phase;
};

/// Delta = (1 + m)/2, eps = (1 - m)/2, phi = 0.
DpaParams dpa_parameters(double m);

/// Quadrature matrix G of the DPA Hamiltonian, H = x^T G x / 2 up to a
/// constant: G = Delta I + eps [[-sin phi, cos phi], [cos phi, sin phi]].
Eigen::Matrix2d dpa_hamiltonian_matrix(const DpaParams& p);

LinearSLH cavity_slh(const CavityParams& p);

/// One detector mode on three channels: L_1 = -i a2 p on channel 0 and
/// L_3 = (a3 / 2 a4) q on channel 2, H = (a1/2)(q p + p q).
LinearSLH detector_slh(const DetectorParams& p);

/// Pure scattering on channels 0 and 1 with beta = sqrt(1 - alpha^2); no
/// modes.
LinearSLH beam_splitter_slh(double alpha);

/// Reduced model of a cavity coupled through a heavily damped auxiliary
/// mode: L = 2 sqrt(2) Gamma q / sqrt(gamma), G = 0.
LinearSLH adiabatic_eliminate(double coupling_gamma, double damping_gamma);

// ---------------------------------------------------------------------------
// Ideal network: F <| C2 <| C1 on one channel.

DriftDiffusion ideal_closed_form(const NetworkParams& p);
LinearSLH ideal_cascade(const NetworkParams& p);
DriftDiffusion ideal_from_cascade(const NetworkParams& p);

/// Closed form; with `check_dual` also rebuilds through the cascade algebra
/// and throws InternalConsistencyError on disagreement.
DriftDiffusion build_ideal(const NetworkParams& p, bool check_dual = false);

// ---------------------------------------------------------------------------
// Realistic network: F <| D <| C2 <| B <| C1 on three channels, five
// relevant coordinates (q1, p1, q2, p2, q3).

struct WeightedSLH {
  LinearSLH system;
  ChannelWeights weights;
};

DriftDiffusion realistic_closed_form(const NetworkParams& p);
WeightedSLH realistic_cascade(const NetworkParams& p);
/// Strips scattering, extracts the 6 x 6 drift/diffusion and drops the
/// decoupled detector momentum.
DriftDiffusion realistic_from_cascade(const NetworkParams& p);
DriftDiffusion build_realistic(const NetworkParams& p, bool check_dual = false);

/// Cavity state of the realistic network: top-left 4 x 4 block.
CovarianceMatrix reduce_cavity_covariance(const CovarianceMatrix& v);

/// Riccati design of the time-invariant feedback vector for the ideal
/// network with the given cavities.
RiccatiSolution design_ideal_feedback(const CavityParams& cavity1,
                                      const CavityParams& cavity2,
                                      const RiccatiOptions& options = {});

}  // namespace gaussnet
