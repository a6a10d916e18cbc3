#include "gaussnet/slh.hpp"

#include <set>
#include <string>

namespace gaussnet {
namespace {

constexpr double kUnitarityTolerance = 1e-10;

RealVector resolve_weights(const ChannelWeights& weights, int n_channels) {
  if (weights.size() == 0) return RealVector::Ones(n_channels);
  if (weights.size() != n_channels) {
    throw DimensionError("expected " + std::to_string(n_channels) +
                         " channel weights, got " +
                         std::to_string(weights.size()));
  }
  if ((weights.array() < 0.0).any() || !weights.allFinite()) {
    throw ConfigurationError("channel noise weights must be finite and >= 0");
  }
  return weights;
}

}  // namespace

double unitarity_defect(const ComplexMatrix& s) {
  const ComplexMatrix defect =
      s.adjoint() * s - ComplexMatrix::Identity(s.rows(), s.cols());
  return defect.size() == 0 ? 0.0 : defect.cwiseAbs().maxCoeff();
}

LinearSLH::LinearSLH(ComplexMatrix scattering, ComplexMatrix coupling,
                     RealMatrix hamiltonian)
    : s_(std::move(scattering)), l_(std::move(coupling)) {
  if (s_.rows() < 1 || s_.rows() != s_.cols()) {
    throw DimensionError("scattering matrix must be square with >= 1 channel");
  }
  if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() % 2 != 0) {
    throw DimensionError("Hamiltonian matrix must be 2N x 2N");
  }
  if (l_.rows() != s_.rows() || l_.cols() != hamiltonian.rows()) {
    throw DimensionError("coupling matrix must be M x 2N (" +
                         std::to_string(s_.rows()) + " x " +
                         std::to_string(hamiltonian.rows()) + "), got " +
                         std::to_string(l_.rows()) + " x " +
                         std::to_string(l_.cols()));
  }
  if (unitarity_defect(s_) > kUnitarityTolerance) {
    throw ConfigurationError("scattering matrix is not unitary");
  }
  require_symmetric(hamiltonian, kSymmetryTolerance, "Hamiltonian matrix");
  g_ = 0.5 * (hamiltonian + hamiltonian.transpose());
}

LinearSLH LinearSLH::identity(int n_channels, int n_modes) {
  return LinearSLH(ComplexMatrix::Identity(n_channels, n_channels),
                   ComplexMatrix::Zero(n_channels, 2 * n_modes),
                   RealMatrix::Zero(2 * n_modes, 2 * n_modes));
}

LinearSLH pad(const LinearSLH& sys, int target_channels,
              const std::vector<int>& assignment,
              std::optional<ModeEmbedding> modes) {
  const int m = sys.n_channels();
  if (target_channels < m) {
    throw ConfigurationError("cannot pad to fewer channels than the system has");
  }
  if (static_cast<int>(assignment.size()) != m) {
    throw ConfigurationError("channel assignment must list every channel");
  }
  std::set<int> used;
  for (int slot : assignment) {
    if (slot < 0 || slot >= target_channels || !used.insert(slot).second) {
      throw ConfigurationError("channel assignment is not injective into [0, " +
                               std::to_string(target_channels) + ")");
    }
  }

  const ModeEmbedding embed =
      modes.value_or(ModeEmbedding{sys.n_modes(), 0});
  if (embed.first_mode < 0 ||
      embed.first_mode + sys.n_modes() > embed.total_modes) {
    throw ConfigurationError("mode embedding does not fit the target space");
  }
  const int dim = 2 * embed.total_modes;
  const int offset = 2 * embed.first_mode;
  const int own = 2 * sys.n_modes();

  ComplexMatrix s = ComplexMatrix::Identity(target_channels, target_channels);
  ComplexMatrix l = ComplexMatrix::Zero(target_channels, dim);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) s(assignment[i], assignment[j]) = sys.scattering()(i, j);
    l.row(assignment[i]).segment(offset, own) = sys.coupling().row(i);
  }
  RealMatrix g = RealMatrix::Zero(dim, dim);
  g.block(offset, offset, own, own) = sys.hamiltonian();
  return LinearSLH(std::move(s), std::move(l), std::move(g));
}

LinearSLH series(const LinearSLH& g2, const LinearSLH& g1,
                 const ChannelWeights& weights) {
  if (g2.n_channels() != g1.n_channels()) {
    throw CompositionError("series product needs equal channel counts (" +
                           std::to_string(g2.n_channels()) + " vs " +
                           std::to_string(g1.n_channels()) + ")");
  }
  if (g2.n_modes() != g1.n_modes()) {
    throw CompositionError(
        "series product needs a common mode space; embed with pad() first");
  }
  const RealVector w = resolve_weights(weights, g1.n_channels());
  const ComplexMatrix& s2 = g2.scattering();
  const ComplexMatrix& l2 = g2.coupling();
  const ComplexMatrix& l1 = g1.coupling();

  const RealMatrix cross =
      (l2.adjoint() * s2 * w.cast<Complex>().asDiagonal() * l1).imag();
  return LinearSLH(s2 * g1.scattering(), l2 + s2 * l1,
                   g1.hamiltonian() + g2.hamiltonian() + cross +
                       cross.transpose());
}

LinearSLH feedback_close(const LinearSLH& sys, const RealVector& f,
                         double gain, int channel,
                         const ChannelWeights& weights) {
  if (channel < 0 || channel >= sys.n_channels()) {
    throw ConfigurationError("feedback channel " + std::to_string(channel) +
                             " is not a channel of the system");
  }
  if (f.size() != 2 * sys.n_modes()) {
    throw DimensionError("feedback vector must have 2N entries");
  }
  ComplexMatrix l = ComplexMatrix::Zero(sys.n_channels(), 2 * sys.n_modes());
  l.row(channel) = Complex(0.0, -gain) * f.transpose().cast<Complex>();
  const LinearSLH controller(
      ComplexMatrix::Identity(sys.n_channels(), sys.n_channels()), l,
      RealMatrix::Zero(2 * sys.n_modes(), 2 * sys.n_modes()));
  return series(controller, sys, weights);
}

LinearSLH strip_scattering(const LinearSLH& sys) {
  return LinearSLH(
      ComplexMatrix::Identity(sys.n_channels(), sys.n_channels()),
      sys.scattering().adjoint() * sys.coupling(), sys.hamiltonian());
}

DriftDiffusion drift_diffusion(const LinearSLH& sys,
                               const ChannelWeights& weights) {
  const RealVector w = resolve_weights(weights, sys.n_channels());
  const SymplecticForm sigma(sys.n_modes());
  const RealMatrix& sn = sigma.matrix();
  const ComplexMatrix& l = sys.coupling();
  const ComplexMatrix k = l.adjoint() * w.cast<Complex>().asDiagonal() * l;

  DriftDiffusion out;
  out.a = sn * (sys.hamiltonian() + k.imag());
  out.d = sn * k.real() * sn.transpose();
  out.d = 0.5 * (out.d + out.d.transpose());
  return out;
}

DriftDiffusion drop_decoupled_coordinate(const DriftDiffusion& dd, int index,
                                         double tol) {
  const int n = dd.dim();
  if (index < 0 || index >= n) {
    throw DimensionError("coordinate index out of range");
  }
  double coupling = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j == index) continue;
    coupling = std::max({coupling, std::abs(dd.a(index, j)),
                         std::abs(dd.a(j, index)), std::abs(dd.d(index, j))});
  }
  if (coupling > tol) {
    throw InternalConsistencyError(
        "coordinate " + std::to_string(index) +
        " is coupled to the rest (max entry " + std::to_string(coupling) + ")");
  }
  std::vector<int> keep;
  for (int j = 0; j < n; ++j) {
    if (j != index) keep.push_back(j);
  }
  DriftDiffusion out{RealMatrix(n - 1, n - 1), RealMatrix(n - 1, n - 1)};
  for (int i = 0; i < n - 1; ++i) {
    for (int j = 0; j < n - 1; ++j) {
      out.a(i, j) = dd.a(keep[i], keep[j]);
      out.d(i, j) = dd.d(keep[i], keep[j]);
    }
  }
  return out;
}

}  // namespace gaussnet
