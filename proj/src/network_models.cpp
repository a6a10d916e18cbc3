#include "gaussnet/network_models.hpp"

#include <cmath>
#include <string>

namespace gaussnet {
namespace {

const Eigen::Matrix2d& sigma2() {
  static const Eigen::Matrix2d s = (Eigen::Matrix2d() << 0, 1, -1, 0).finished();
  return s;
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

void check_dual(const DriftDiffusion& closed, const DriftDiffusion& cascade,
                const char* network) {
  const double gap = std::max(max_abs(closed.a - cascade.a),
                              max_abs(closed.d - cascade.d));
  if (!(gap <= kDualConstructionTolerance)) {
    throw InternalConsistencyError(
        std::string(network) +
        " network: closed form and cascade disagree by " + std::to_string(gap));
  }
}

constexpr int kLinkChannel = 0;
constexpr int kDetectorNoiseChannel = 2;

}  // namespace

const char* to_string(CavityKind kind) {
  return kind == CavityKind::Damped ? "damped" : "dispersive";
}

CavityKind parse_cavity_kind(const std::string& text) {
  if (text == "damped") return CavityKind::Damped;
  if (text == "dispersive") return CavityKind::Dispersive;
  throw ConfigurationError("unknown cavity kind '" + text +
                           "' (expected damped or dispersive)");
}

void CavityParams::validate() const {
  if (!positive_finite(m)) throw ConfigurationError("cavity m must be > 0");
  if (!positive_finite(kappa)) {
    throw ConfigurationError("cavity kappa must be > 0");
  }
}

Eigen::Vector2cd CavityParams::coupling() const {
  const double k = std::sqrt(kappa);
  if (kind == CavityKind::Damped) return {Complex(k, 0.0), Complex(0.0, k)};
  return {Complex(k, 0.0), Complex(0.0, 0.0)};
}

Eigen::Matrix2d CavityParams::hamiltonian() const {
  return Eigen::Vector2d(m, 1.0).asDiagonal();
}

DetectorParams DetectorParams::low_pass(double tau, double a4) {
  if (!positive_finite(tau)) {
    throw ConfigurationError("detector time constant must be > 0");
  }
  return DetectorParams{tau, -1.0 / tau, 1.0 / tau, 1.0, a4};
}

void DetectorParams::validate() const {
  if (!positive_finite(a4)) {
    throw ConfigurationError("detector noise variance a4 must be > 0");
  }
  if (!std::isfinite(a1) || !std::isfinite(a2) || !std::isfinite(a3)) {
    throw ConfigurationError("detector coefficients must be finite");
  }
}

void NetworkParams::validate() const {
  cavity1.validate();
  cavity2.validate();
  if (!std::isfinite(gain)) throw ConfigurationError("gain must be finite");
  if (!feedback.allFinite()) {
    throw ConfigurationError("feedback vector must be finite");
  }
  if (!(transmittance > 0.0 && transmittance <= 1.0)) {
    throw ConfigurationError("transmittance alpha must lie in (0, 1]");
  }
}

ComplexVector NetworkParams::coupling() const {
  ComplexVector l(4);
  l << cavity1.coupling(), cavity2.coupling();
  return l;
}

DpaParams dpa_parameters(double m) {
  if (!positive_finite(m)) throw ConfigurationError("m must be > 0");
  return DpaParams{(1.0 + m) / 2.0, (1.0 - m) / 2.0, 0.0};
}

Eigen::Matrix2d dpa_hamiltonian_matrix(const DpaParams& p) {
  const double c = std::cos(p.phase), s = std::sin(p.phase);
  Eigen::Matrix2d g;
  g << p.detuning - p.pump * s, p.pump * c, p.pump * c, p.detuning + p.pump * s;
  return g;
}

LinearSLH cavity_slh(const CavityParams& p) {
  p.validate();
  return LinearSLH(ComplexMatrix::Identity(1, 1), p.coupling().transpose(),
                   p.hamiltonian());
}

LinearSLH detector_slh(const DetectorParams& p) {
  p.validate();
  ComplexMatrix l = ComplexMatrix::Zero(3, 2);
  l(0, 1) = Complex(0.0, -p.a2);
  l(2, 0) = p.a3 / (2.0 * p.a4);
  RealMatrix g(2, 2);
  g << 0.0, p.a1, p.a1, 0.0;
  return LinearSLH(ComplexMatrix::Identity(3, 3), std::move(l), std::move(g));
}

LinearSLH beam_splitter_slh(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigurationError("transmittance alpha must lie in (0, 1]");
  }
  const double beta = std::sqrt(1.0 - alpha * alpha);
  ComplexMatrix s = ComplexMatrix::Identity(3, 3);
  s(0, 0) = alpha;
  s(0, 1) = -beta;
  s(1, 0) = beta;
  s(1, 1) = alpha;
  return LinearSLH(std::move(s), ComplexMatrix::Zero(3, 0),
                   RealMatrix::Zero(0, 0));
}

LinearSLH adiabatic_eliminate(double coupling_gamma, double damping_gamma) {
  if (!positive_finite(coupling_gamma) || !positive_finite(damping_gamma)) {
    throw ConfigurationError("adiabatic elimination needs Gamma, gamma > 0");
  }
  ComplexMatrix l = ComplexMatrix::Zero(1, 2);
  l(0, 0) = 2.0 * std::sqrt(2.0) * coupling_gamma / std::sqrt(damping_gamma);
  return LinearSLH(ComplexMatrix::Identity(1, 1), std::move(l),
                   RealMatrix::Zero(2, 2));
}

// ---------------------------------------------------------------------------

DriftDiffusion ideal_closed_form(const NetworkParams& p) {
  p.validate();
  const Eigen::Matrix2d& s = sigma2();
  const Eigen::Vector2cd l1 = p.cavity1.coupling();
  const Eigen::Vector2cd l2 = p.cavity2.coupling();
  const Eigen::Matrix2cd k11 = l1.conjugate() * l1.transpose();
  const Eigen::Matrix2cd k22 = l2.conjugate() * l2.transpose();
  const Eigen::Matrix2cd k21 = l2.conjugate() * l1.transpose();

  RealMatrix a = RealMatrix::Zero(4, 4);
  a.topLeftCorner<2, 2>() = s * (p.cavity1.hamiltonian() + k11.imag());
  a.bottomLeftCorner<2, 2>() = 2.0 * s * k21.imag();
  a.bottomRightCorner<2, 2>() = s * (p.cavity2.hamiltonian() + k22.imag());

  RealMatrix d = RealMatrix::Zero(4, 4);
  d.topLeftCorner<2, 2>() = s * k11.real() * s.transpose();
  d.bottomLeftCorner<2, 2>() = s * k21.real() * s.transpose();
  d.topRightCorner<2, 2>() = d.bottomLeftCorner<2, 2>().transpose();
  d.bottomRightCorner<2, 2>() = s * k22.real() * s.transpose();

  const SymplecticForm sigma(2);
  const RealMatrix& sn = sigma.matrix();
  const ComplexVector l = p.coupling();
  const RealVector f = p.feedback;
  const double g = p.gain;
  a += 2.0 * g * sn * f * l.real().transpose();
  d += sn *
       (g * g * f * f.transpose() - g * l.imag() * f.transpose() -
        g * f * l.imag().transpose()) *
       sn.transpose();
  return DriftDiffusion{a, d};
}

LinearSLH ideal_cascade(const NetworkParams& p) {
  p.validate();
  const LinearSLH c1 = pad(cavity_slh(p.cavity1), 1, {0}, ModeEmbedding{2, 0});
  const LinearSLH c2 = pad(cavity_slh(p.cavity2), 1, {0}, ModeEmbedding{2, 1});
  return feedback_close(series(c2, c1), p.feedback, p.gain, kLinkChannel);
}

DriftDiffusion ideal_from_cascade(const NetworkParams& p) {
  return drift_diffusion(ideal_cascade(p));
}

DriftDiffusion build_ideal(const NetworkParams& p, bool check) {
  DriftDiffusion closed = ideal_closed_form(p);
  if (check) check_dual(closed, ideal_from_cascade(p), "ideal");
  return closed;
}

// ---------------------------------------------------------------------------

DriftDiffusion realistic_closed_form(const NetworkParams& p) {
  p.validate();
  p.detector.validate();
  const Eigen::Matrix2d& s = sigma2();
  const Eigen::Vector2cd l1 = p.cavity1.coupling();
  const Eigen::Vector2cd l2 = p.cavity2.coupling();
  const Eigen::Matrix2cd k11 = l1.conjugate() * l1.transpose();
  const Eigen::Matrix2cd k22 = l2.conjugate() * l2.transpose();
  const Eigen::Matrix2cd k21 = l2.conjugate() * l1.transpose();
  const double alpha = p.transmittance;
  const double g = p.gain;
  const DetectorParams& det = p.detector;
  const Eigen::Vector2d f1 = p.feedback.head<2>();
  const Eigen::Vector2d f2 = p.feedback.tail<2>();

  RealMatrix a = RealMatrix::Zero(5, 5);
  a.block<2, 2>(0, 0) = s * (p.cavity1.hamiltonian() + k11.imag());
  a.block<2, 2>(2, 0) = 2.0 * alpha * s * k21.imag();
  a.block<2, 2>(2, 2) = s * (p.cavity2.hamiltonian() + k22.imag());
  a.block<2, 1>(0, 4) = g * det.a3 * s * f1;
  a.block<2, 1>(2, 4) = g * det.a3 * s * f2;
  a.block<1, 2>(4, 0) = 2.0 * alpha * det.a2 * l1.real().transpose();
  a.block<1, 2>(4, 2) = 2.0 * det.a2 * l2.real().transpose();
  a(4, 4) = det.a1;

  RealMatrix d = RealMatrix::Zero(5, 5);
  d.block<2, 2>(0, 0) = s * k11.real() * s.transpose();
  d.block<2, 2>(2, 0) = alpha * s * k21.real() * s.transpose();
  d.block<2, 2>(2, 2) = s * k22.real() * s.transpose();
  d.block<1, 2>(4, 0) = -alpha * det.a2 * l1.imag().transpose() * s.transpose();
  d.block<1, 2>(4, 2) = -det.a2 * l2.imag().transpose() * s.transpose();
  d(4, 4) = det.a2 * det.a2;
  d.block<2, 2>(0, 2) = d.block<2, 2>(2, 0).transpose();
  d.block<2, 1>(0, 4) = d.block<1, 2>(4, 0).transpose();
  d.block<2, 1>(2, 4) = d.block<1, 2>(4, 2).transpose();

  Eigen::Vector4d sf;
  sf << s * f1, s * f2;
  d.topLeftCorner<4, 4>() += g * g * det.a4 * sf * sf.transpose();
  return DriftDiffusion{a, d};
}

WeightedSLH realistic_cascade(const NetworkParams& p) {
  p.validate();
  p.detector.validate();
  const LinearSLH c1 = pad(cavity_slh(p.cavity1), 3, {0}, ModeEmbedding{3, 0});
  const LinearSLH bs =
      pad(beam_splitter_slh(p.transmittance), 3, {0, 1, 2}, ModeEmbedding{3, 0});
  const LinearSLH c2 = pad(cavity_slh(p.cavity2), 3, {0}, ModeEmbedding{3, 1});
  const LinearSLH det =
      pad(detector_slh(p.detector), 3, {0, 1, 2}, ModeEmbedding{3, 2});

  RealVector weights = RealVector::Ones(3);
  weights(kDetectorNoiseChannel) = p.detector.a4;

  RealVector f = RealVector::Zero(6);
  f.head<4>() = p.feedback;

  LinearSLH net = series(bs, c1, weights);
  net = series(c2, net, weights);
  net = series(det, net, weights);
  net = feedback_close(net, f, p.gain, kDetectorNoiseChannel, weights);
  return WeightedSLH{std::move(net), std::move(weights)};
}

DriftDiffusion realistic_from_cascade(const NetworkParams& p) {
  const WeightedSLH net = realistic_cascade(p);
  const DriftDiffusion full =
      drift_diffusion(strip_scattering(net.system), net.weights);
  // Detector momentum p3 (coordinate 5) feeds nothing back.
  return drop_decoupled_coordinate(full, 5);
}

DriftDiffusion build_realistic(const NetworkParams& p, bool check) {
  DriftDiffusion closed = realistic_closed_form(p);
  if (check) check_dual(closed, realistic_from_cascade(p), "realistic");
  return closed;
}

CovarianceMatrix reduce_cavity_covariance(const CovarianceMatrix& v) {
  if (v.dim() != 5) {
    throw ShapeError("cavity reduction expects the 5 x 5 realistic covariance");
  }
  return CovarianceMatrix(v.matrix().topLeftCorner(4, 4));
}

RiccatiSolution design_ideal_feedback(const CavityParams& cavity1,
                                      const CavityParams& cavity2,
                                      const RiccatiOptions& options) {
  NetworkParams open;
  open.cavity1 = cavity1;
  open.cavity2 = cavity2;
  open.gain = 0.0;
  return solve_riccati(ideal_closed_form(open), open.coupling(), options);
}

}  // namespace gaussnet
