#include <random>

#include <gtest/gtest.h>

#include "gaussnet/dynamics.hpp"
#include "gaussnet/network_models.hpp"
#include "support/oracles.hpp"

namespace gaussnet {
namespace {

NetworkParams network(CavityKind first, CavityKind second) {
  NetworkParams p;
  p.cavity1.kind = first;
  p.cavity2.kind = second;
  return p;
}

RiccatiSolution design(const NetworkParams& p, const RiccatiOptions& options = {}) {
  return design_ideal_feedback(p.cavity1, p.cavity2, options);
}

void expect_feedback(const RealVector& f, const Eigen::Vector4d& expected) {
  ASSERT_EQ(f.size(), 4);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(f(i), expected(i), 1e-3) << "entry " << i;
}

TEST(SolveRiccati, DispersiveDampedFeedback) {
  const RiccatiSolution sol =
      design(network(CavityKind::Dispersive, CavityKind::Damped));
  expect_feedback(sol.feedback, {0.1212, 2.2196, -0.3163, -3.2277});
  EXPECT_NEAR(sol.determinant, 1.0 / 16.0, 1e-8);
  EXPECT_LE(sol.residual, 1e-10);
  EXPECT_EQ(sol.method, RiccatiMethod::NewtonKleinman);
}

TEST(SolveRiccati, DampedDampedFeedback) {
  const RiccatiSolution sol = design(network(CavityKind::Damped, CavityKind::Damped));
  expect_feedback(sol.feedback, {0.0629, 0.1525, 0.2479, -0.5831});
  EXPECT_NEAR(sol.determinant, 1.0 / 16.0, 1e-8);
  EXPECT_LE(sol.residual, 1e-10);
}

TEST(SolveRiccati, SolutionIsPhysicalAndResidualVanishes) {
  for (auto first : {CavityKind::Dispersive, CavityKind::Damped}) {
    NetworkParams p = network(first, CavityKind::Damped);
    const RiccatiSolution sol = design(p);
    EXPECT_TRUE(is_physical(sol.covariance, 1e-9));
    EXPECT_LE(max_abs(riccati_residual(ideal_closed_form(p), p.coupling(),
                                       sol.covariance.matrix())),
              1e-10);
    EXPECT_LT(max_abs(design_feedback(sol.covariance.matrix(), p.coupling()) -
                      sol.feedback),
              1e-14);
  }
}

TEST(SolveRiccati, ClosedLoopReproducesSolution) {
  for (auto first : {CavityKind::Dispersive, CavityKind::Damped}) {
    NetworkParams p = network(first, CavityKind::Damped);
    const RiccatiSolution sol = design(p);
    p.feedback = sol.feedback;
    p.gain = 1.0;
    const DriftDiffusion closed = ideal_closed_form(p);
    EXPECT_EQ(stability_class(closed.a).kind, Stability::Stable);
    EXPECT_LT(max_abs(steady_lyapunov(closed).matrix() - sol.covariance.matrix()),
              1e-8);
    const Trajectory traj = propagate_lyapunov(
        closed, CovarianceMatrix::scaled_identity(2, 2.0), 40.0, 1e-3, 40000);
    EXPECT_NEAR(traj.covariances.back().determinant(), 1.0 / 16.0, 1e-6);
  }
}

TEST(SolveRiccati, PropagationFallbackAgrees) {
  const NetworkParams p = network(CavityKind::Dispersive, CavityKind::Damped);
  RiccatiOptions options;
  options.shift_grid.clear();
  options.fallback_t_end = 60.0;
  const RiccatiSolution sol = design(p, options);
  EXPECT_EQ(sol.method, RiccatiMethod::PropagationFallback);
  EXPECT_LT(max_abs(sol.feedback - design(p).feedback), 1e-8);
}

TEST(SolveRiccati, UnstabilizableModeReported) {
  DriftDiffusion dd{RealMatrix::Identity(4, 4), RealMatrix::Identity(4, 4)};
  dd.a.topLeftCorner(2, 2) *= -1.0;
  ComplexVector ell = ComplexVector::Zero(4);
  ell(0) = 1.0;
  ell(1) = Complex(0, 1);
  RiccatiOptions options;
  options.fallback_t_end = 20.0;
  EXPECT_THROW(solve_riccati(dd, ell, options), SolverError);
}

TEST(SolveRiccati, PurelyImaginaryCouplingRejected) {
  ComplexVector ell = ComplexVector::Zero(2);
  ell(1) = Complex(0, 1);
  const DriftDiffusion dd{-RealMatrix::Identity(2, 2), RealMatrix::Identity(2, 2)};
  EXPECT_THROW(solve_riccati(dd, ell), ConfigurationError);
}

TEST(DesignFeedback, VacuumExamples) {
  // Damped coupling (1, i): f = 2 Sigma (I/2) (1, 0) + (0, 1) = (0, 0).
  Eigen::VectorXcd ell(2);
  ell << 1.0, Complex(0, 1);
  EXPECT_LT(design_feedback(0.5 * RealMatrix::Identity(2, 2), ell).norm(), 1e-15);
  // Dispersive coupling (1, 0): f = (0, -1).
  ell << 1.0, 0.0;
  const RealVector f = design_feedback(0.5 * RealMatrix::Identity(2, 2), ell);
  EXPECT_NEAR(f(0), 0.0, 1e-15);
  EXPECT_NEAR(f(1), -1.0, 1e-15);
  EXPECT_THROW(design_feedback(RealMatrix::Identity(3, 3), ell), DimensionError);
}

// With f frozen at design_feedback(V) and unit gain, the closed-loop
// Lyapunov right-hand side equals the Riccati right-hand side at V.
TEST(TimeVariantFeedback, MatchesFrozenFeedbackAtEachState) {
  std::mt19937_64 rng(21);
  NetworkParams p = network(CavityKind::Dispersive, CavityKind::Damped);
  const DriftDiffusion open = ideal_closed_form(p);
  for (int trial = 0; trial < 20; ++trial) {
    const RealMatrix x = testing::random_symmetric(rng, 4, 0.3);
    const RealMatrix v = 0.5 * RealMatrix::Identity(4, 4) + x * x.transpose();
    p.feedback = design_feedback(v, p.coupling());
    p.gain = 1.0;
    const DriftDiffusion closed = ideal_closed_form(p);
    const RealMatrix lyap = lyapunov_residual(closed, v);
    EXPECT_LT(max_abs(lyap - riccati_residual(open, p.coupling(), v)), 1e-12);
  }
}

TEST(TimeVariantFeedback, ConvergesToRiccatiSolution) {
  const NetworkParams p = network(CavityKind::Dispersive, CavityKind::Damped);
  const Trajectory traj = propagate_time_variant_feedback(
      ideal_closed_form(p), p.coupling(), CovarianceMatrix::vacuum(2), 40.0, 1e-3,
      40000);
  EXPECT_LT(max_abs(traj.covariances.back().matrix() - design(p).covariance.matrix()),
            1e-6);
}

}  // namespace
}  // namespace gaussnet
