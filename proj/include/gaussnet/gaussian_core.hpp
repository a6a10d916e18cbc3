#pragma once

// Matrix and symplectic primitives shared by the rest of the library.
//
// Quadratures are ordered (q1, p1, q2, p2, ...). Covariances use hbar = 1,
// so the vacuum state has V = I/2.

#include <Eigen/Dense>

#include "gaussnet/errors.hpp"

namespace gaussnet {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

inline constexpr double kSymmetryTolerance = 1e-10;
inline constexpr double kPhysicalityTolerance = 1e-9;

/// Block-diagonal form Sigma_N = diag(Sigma, ..., Sigma) with
/// Sigma = [[0, 1], [-1, 0]].
class SymplecticForm {
 public:
  explicit SymplecticForm(int n_modes);

  int n_modes() const { return n_modes_; }
  int dim() const { return 2 * n_modes_; }
  const RealMatrix& matrix() const { return matrix_; }

 private:
  int n_modes_;
  RealMatrix matrix_;
};

SymplecticForm symplectic_form(int n_modes);

/// Symmetric matrix of second moments, normally 2N x 2N over quadratures.
///
/// Odd sizes are accepted for hybrid quantum-classical states (the realistic
/// network carries one classical detector coordinate). Construction checks
/// symmetry to `tol` and stores the exactly symmetrized matrix. Physicality
/// is not enforced here; see is_physical().
class CovarianceMatrix {
 public:
  explicit CovarianceMatrix(const RealMatrix& v,
                            double tol = kSymmetryTolerance);

  static CovarianceMatrix vacuum(int n_modes);
  static CovarianceMatrix scaled_identity(int n_modes, double scale);

  int n_modes() const { return static_cast<int>(v_.rows() / 2); }
  int dim() const { return static_cast<int>(v_.rows()); }
  bool has_mode_structure() const { return v_.rows() % 2 == 0; }
  const RealMatrix& matrix() const { return v_; }
  double determinant() const { return v_.determinant(); }

 private:
  RealMatrix v_;
};

/// First moments (<q_1>, <p_1>, ...).
class MeanVector {
 public:
  explicit MeanVector(const RealVector& x);
  static MeanVector zero(int n_modes);

  int dim() const { return static_cast<int>(x_.size()); }
  const RealVector& vector() const { return x_; }

 private:
  RealVector x_;
};

/// V = [[V1, V2], [V2^T, V3]] for a two-mode covariance.
struct TwoModeBlocks {
  Eigen::Matrix2d v1;
  Eigen::Matrix2d v2;
  Eigen::Matrix2d v3;

  RealMatrix assemble() const;
};

TwoModeBlocks block_partition(const CovarianceMatrix& v);

/// True iff every eigenvalue of the Hermitian matrix V + (i/2) Sigma_N is
/// at least -tol (Robertson-Schroedinger uncertainty relation).
bool is_physical(const CovarianceMatrix& v, double tol = kPhysicalityTolerance);

/// Throws ShapeError when `m` is not symmetric to `tol`.
void require_symmetric(const RealMatrix& m, double tol, const char* what);

double max_abs(const RealMatrix& m);

}  // namespace gaussnet
