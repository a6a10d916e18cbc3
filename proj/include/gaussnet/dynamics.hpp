#pragma once

// Moment dynamics of linear Gaussian systems: RK4 propagation, steady-state
// Lyapunov solutions, stability classification, and the algebraic Riccati
// machinery used to design the direct-feedback coefficient vector.
//
// Time is measured in units of 1/kappa throughout.

#include <functional>
#include <vector>

#include "gaussnet/gaussian_core.hpp"
#include "gaussnet/slh.hpp"

namespace gaussnet {

inline constexpr double kDefaultTimeStep = 1e-3;
inline constexpr double kDefaultEndTime = 20.0;
inline constexpr double kStabilityTolerance = 1e-8;

struct Trajectory {
  std::vector<double> times;
  std::vector<CovarianceMatrix> covariances;
  std::vector<MeanVector> means;

  std::size_t size() const { return times.size(); }
};

/// Fixed-step integration grid: `steps` steps of `dt`, the last one
/// shortened so the grid ends exactly at t_end.
struct TimeGrid {
  double t_end;
  double dt;
  long steps;

  TimeGrid(double t_end, double dt);
  double time(long step) const;
};

/// Integrates dV/dt = A V + V A^T + D with classical RK4, symmetrizing after
/// every step. Samples every `stride`-th step plus the final time.
Trajectory propagate_lyapunov(const DriftDiffusion& dd,
                              const CovarianceMatrix& v0, double t_end,
                              double dt = kDefaultTimeStep, int stride = 1);

/// Same integrator for an arbitrary right-hand side dV/dt = rhs(V).
Trajectory propagate_covariance(
    const std::function<RealMatrix(const RealMatrix&)>& rhs,
    const CovarianceMatrix& v0, double t_end, double dt, int stride = 1);

/// Integrates d<x>/dt = A <x>.
Trajectory propagate_mean(const RealMatrix& a, const MeanVector& m0,
                          double t_end, double dt = kDefaultTimeStep,
                          int stride = 1);

/// Solves A X + X A^T + Q = 0 by Kronecker vectorization. No stability
/// check; the caller guarantees the Sylvester operator is invertible.
RealMatrix solve_lyapunov(const RealMatrix& a, const RealMatrix& q);

/// Steady covariance of a Hurwitz drift. Throws NoSteadyStateError
/// otherwise.
CovarianceMatrix steady_lyapunov(const DriftDiffusion& dd);

/// A V + V A^T + D.
RealMatrix lyapunov_residual(const DriftDiffusion& dd, const RealMatrix& v);

enum class Stability { Stable, Marginal, Unstable };

struct StabilityClass {
  Stability kind;
  Eigen::VectorXcd eigenvalues;
  double max_real_part;
};

StabilityClass stability_class(const RealMatrix& a,
                               double tol = kStabilityTolerance);

const char* to_string(Stability s);

// ---------------------------------------------------------------------------
// Feedback design

/// R(V) = A_o V + V A_o^T + D_o - b b^T with b = 2 V Re(l) - Sigma Im(l).
RealMatrix riccati_residual(const DriftDiffusion& open_loop,
                            const ComplexVector& coupling,
                            const RealMatrix& v);

/// f = 2 Sigma V Re(l) + Im(l).
RealVector design_feedback(const RealMatrix& v, const ComplexVector& coupling);

enum class RiccatiMethod { NewtonKleinman, PropagationFallback };

struct RiccatiOptions {
  double tolerance = 1e-10;
  int max_iterations = 60;
  std::vector<double> shift_grid = {0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
  double fallback_t_end = 400.0;
  double fallback_dt = 1e-3;
};

struct RiccatiSolution {
  CovarianceMatrix covariance;
  RealVector feedback;
  double residual;
  double determinant;
  int iterations;
  RiccatiMethod method;
  std::vector<double> residual_history;
};

/// Stabilizing solution of R(V) = 0.
///
/// R is rewritten as the standard continuous algebraic Riccati equation
///   A' V + V A'^T + Q - V R' V = 0,
///   A' = A_o + 2 s r^T, Q = D_o - s s^T, R' = 4 r r^T,
/// with r = Re(l) and s = Sigma Im(l), and solved by Newton-Kleinman
/// iteration. The closed loop A' - V R' equals the feedback drift at g = 1,
/// f = design_feedback(V), so the stabilizing root is the one that makes
/// the controlled network Hurwitz.
RiccatiSolution solve_riccati(const DriftDiffusion& open_loop,
                              const ComplexVector& coupling,
                              const RiccatiOptions& options = {});

/// Newton-Kleinman on A' V + V A'^T + Q - V R' V = 0 from a stabilizing
/// `initial` guess. Throws SolverError on stagnation or loss of stability.
RealMatrix newton_kleinman(const RealMatrix& a, const RealMatrix& q,
                           const RealMatrix& r, RealMatrix initial,
                           double tolerance, int max_iterations,
                           std::vector<double>* history = nullptr,
                           int* iterations = nullptr);

/// dV/dt = R(V): the ideal network with the time-variant feedback law
/// f = f_t = design_feedback(V_t) at unit gain.
Trajectory propagate_time_variant_feedback(const DriftDiffusion& open_loop,
                                           const ComplexVector& coupling,
                                           const CovarianceMatrix& v0,
                                           double t_end,
                                           double dt = kDefaultTimeStep,
                                           int stride = 1);

}  // namespace gaussnet
