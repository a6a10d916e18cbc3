#include "gaussnet/gaussian_core.hpp"

#include <cmath>
#include <string>

namespace gaussnet {

SymplecticForm::SymplecticForm(int n_modes) : n_modes_(n_modes) {
  if (n_modes < 1) {
    throw DimensionError("symplectic form needs at least one mode, got " +
                         std::to_string(n_modes));
  }
  matrix_ = RealMatrix::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    matrix_(2 * k, 2 * k + 1) = 1.0;
    matrix_(2 * k + 1, 2 * k) = -1.0;
  }
}

SymplecticForm symplectic_form(int n_modes) { return SymplecticForm(n_modes); }

double max_abs(const RealMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_symmetric(const RealMatrix& m, double tol, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + " must be square");
  }
  const double asym = max_abs(m - m.transpose());
  if (!(asym <= tol)) {
    throw ShapeError(std::string(what) + " is not symmetric (max |M - M^T| = " +
                     std::to_string(asym) + ")");
  }
}

CovarianceMatrix::CovarianceMatrix(const RealMatrix& v, double tol) {
  if (v.rows() == 0 || v.rows() != v.cols()) {
    throw DimensionError("covariance must be square and non-empty, got " +
                         std::to_string(v.rows()) + " x " +
                         std::to_string(v.cols()));
  }
  if (!v.allFinite()) {
    throw ShapeError("covariance has non-finite entries");
  }
  require_symmetric(v, tol, "covariance");
  v_ = 0.5 * (v + v.transpose());
}

CovarianceMatrix CovarianceMatrix::vacuum(int n_modes) {
  return scaled_identity(n_modes, 0.5);
}

CovarianceMatrix CovarianceMatrix::scaled_identity(int n_modes, double scale) {
  if (n_modes < 1) throw DimensionError("covariance needs at least one mode");
  return CovarianceMatrix(scale * RealMatrix::Identity(2 * n_modes, 2 * n_modes));
}

MeanVector::MeanVector(const RealVector& x) : x_(x) {
  if (x.size() == 0 || x.size() % 2 != 0) {
    throw DimensionError("mean vector must have 2N entries");
  }
  if (!x.allFinite()) throw ShapeError("mean vector has non-finite entries");
}

MeanVector MeanVector::zero(int n_modes) {
  return MeanVector(RealVector::Zero(2 * n_modes));
}

RealMatrix TwoModeBlocks::assemble() const {
  RealMatrix v(4, 4);
  v << v1, v2, v2.transpose(), v3;
  return v;
}

TwoModeBlocks block_partition(const CovarianceMatrix& v) {
  if (v.dim() != 4) {
    throw DimensionError("block partition needs a two-mode (4 x 4) covariance");
  }
  const RealMatrix& m = v.matrix();
  return TwoModeBlocks{m.topLeftCorner<2, 2>(), m.topRightCorner<2, 2>(),
                       m.bottomRightCorner<2, 2>()};
}

bool is_physical(const CovarianceMatrix& v, double tol) {
  if (!v.has_mode_structure()) {
    throw DimensionError("physicality check needs a 2N x 2N covariance");
  }
  const SymplecticForm sigma(v.n_modes());
  const ComplexMatrix h = v.matrix().cast<Complex>() +
                          Complex(0.0, 0.5) * sigma.matrix().cast<Complex>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

}  // namespace gaussnet
