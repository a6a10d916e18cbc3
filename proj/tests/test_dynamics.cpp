#include <cmath>

#include <gtest/gtest.h>

#include "gaussnet/dynamics.hpp"
#include "gaussnet/network_models.hpp"
#include "support/oracles.hpp"

namespace gaussnet {
namespace {

DriftDiffusion damped_mode(double kappa) {
  return {-kappa * RealMatrix::Identity(2, 2), kappa * RealMatrix::Identity(2, 2)};
}

RealMatrix rotation_generator() {
  RealMatrix a(2, 2);
  a << 0, 1, -1, 0;
  return a;
}

DriftDiffusion two_damped_cavities(double gain = 0.0) {
  NetworkParams p;
  p.cavity1.kind = CavityKind::Damped;
  p.gain = gain;
  return ideal_closed_form(p);
}

TEST(TimeGrid, StepsCoverEndTime) {
  const TimeGrid grid(1.0, 0.3);
  EXPECT_EQ(grid.steps, 4);
  EXPECT_DOUBLE_EQ(grid.time(grid.steps), 1.0);
  EXPECT_EQ(TimeGrid(20.0, 1e-3).steps, 20000);
  EXPECT_THROW(TimeGrid(1.0, 0.0), ConfigurationError);
  EXPECT_THROW(TimeGrid(-1.0, 0.1), ConfigurationError);
}

TEST(PropagateLyapunov, DampedCavityRelaxation) {
  const CovarianceMatrix v0 = CovarianceMatrix::scaled_identity(1, 2.0);
  const Trajectory traj = propagate_lyapunov(damped_mode(1.0), v0, 2.0);
  const RealMatrix& v = traj.covariances.back().matrix();
  EXPECT_NEAR(v(0, 0), 0.527474, 1e-6);
  EXPECT_NEAR(v(0, 0), testing::damped_relaxation(2.0, 1.0, 2.0), 1e-8);
  EXPECT_NEAR(v(1, 1), v(0, 0), 1e-14);
  EXPECT_NEAR(v(0, 1), 0.0, 1e-14);
}

TEST(PropagateLyapunov, SteadyStateStaysPut) {
  const DriftDiffusion dd = two_damped_cavities();
  const CovarianceMatrix vs = steady_lyapunov(dd);
  const Trajectory traj = propagate_lyapunov(dd, vs, 5.0, 1e-3, 100);
  for (const auto& v : traj.covariances) {
    EXPECT_LT(max_abs(v.matrix() - vs.matrix()), 1e-9);
  }
}

TEST(PropagateLyapunov, SamplesIncludeStartAndEnd) {
  const Trajectory traj = propagate_lyapunov(
      damped_mode(1.0), CovarianceMatrix::vacuum(1), 1.0, 1e-3, 300);
  ASSERT_GE(traj.size(), 2u);
  EXPECT_EQ(traj.times.front(), 0.0);
  EXPECT_DOUBLE_EQ(traj.times.back(), 1.0);
  EXPECT_EQ(traj.size(), 5u);  // 0, 0.3, 0.6, 0.9, 1.0
}

TEST(PropagateLyapunov, ZeroEndTimeGivesSingleSample) {
  const CovarianceMatrix v0 = CovarianceMatrix::scaled_identity(2, 2.0);
  const Trajectory traj = propagate_lyapunov(two_damped_cavities(), v0, 0.0);
  ASSERT_EQ(traj.size(), 1u);
  EXPECT_EQ(traj.covariances[0].matrix(), v0.matrix());
}

TEST(PropagateLyapunov, FourthOrderConvergence) {
  const DriftDiffusion dd = two_damped_cavities(0.4);
  const CovarianceMatrix v0 = CovarianceMatrix::scaled_identity(2, 2.0);
  auto end = [&](double dt) {
    return propagate_lyapunov(dd, v0, 2.0, dt).covariances.back().matrix();
  };
  const RealMatrix v1 = end(0.1), v2 = end(0.05), v3 = end(0.025);
  const double ratio = max_abs(v1 - v2) / max_abs(v2 - v3);
  EXPECT_NEAR(ratio, 16.0, 16.0 * 0.3);
}

TEST(PropagateLyapunov, DivergenceReported) {
  const DriftDiffusion dd{100.0 * RealMatrix::Identity(2, 2),
                          RealMatrix::Identity(2, 2)};
  EXPECT_THROW(propagate_lyapunov(dd, CovarianceMatrix::vacuum(1), 20.0),
               DivergenceError);
}

TEST(PropagateLyapunov, DimensionMismatchRejected) {
  EXPECT_THROW(propagate_lyapunov(damped_mode(1.0), CovarianceMatrix::vacuum(2), 1.0),
               DimensionError);
}

TEST(PropagateMean, ExponentialDecay) {
  Eigen::VectorXd m(2);
  m << 1.0, -2.0;
  const Trajectory traj =
      propagate_mean(-0.5 * RealMatrix::Identity(2, 2), MeanVector(m), 3.0);
  const RealVector& out = traj.means.back().vector();
  EXPECT_NEAR(out(0), std::exp(-1.5), 1e-10);
  EXPECT_NEAR(out(1), -2.0 * std::exp(-1.5), 1e-10);
}

TEST(PropagateMean, MarginalDriftStaysBounded) {
  Eigen::VectorXd m(2);
  m << 1.0, 0.0;
  const Trajectory traj =
      propagate_mean(rotation_generator(), MeanVector(m), 50.0, 1e-3, 1000);
  for (const auto& x : traj.means) EXPECT_NEAR(x.vector().norm(), 1.0, 1e-8);
}

TEST(SteadyLyapunov, MatchesLongPropagation) {
  for (double gain : {0.0, 0.3, 0.8}) {
    const DriftDiffusion dd = two_damped_cavities(gain);
    const CovarianceMatrix vs = steady_lyapunov(dd);
    const Trajectory traj = propagate_lyapunov(
        dd, CovarianceMatrix::scaled_identity(2, 2.0), 50.0, 1e-3, 50000);
    EXPECT_LT(max_abs(traj.covariances.back().matrix() - vs.matrix()), 1e-6);
    EXPECT_LT(max_abs(lyapunov_residual(dd, vs.matrix())), 1e-12);
  }
}

TEST(SteadyLyapunov, SingleModeClosedForm) {
  EXPECT_LT(max_abs(steady_lyapunov(damped_mode(3.0)).matrix() -
                    0.5 * RealMatrix::Identity(2, 2)),
            1e-14);
}

TEST(SteadyLyapunov, NonHurwitzDriftRejected) {
  const DriftDiffusion marginal{rotation_generator(), RealMatrix::Identity(2, 2)};
  EXPECT_THROW(steady_lyapunov(marginal), NoSteadyStateError);
  const DriftDiffusion unstable{RealMatrix::Identity(2, 2), RealMatrix::Identity(2, 2)};
  EXPECT_THROW(steady_lyapunov(unstable), NoSteadyStateError);
}

TEST(StabilityClass, Classification) {
  EXPECT_EQ(stability_class(-RealMatrix::Identity(3, 3)).kind, Stability::Stable);
  EXPECT_EQ(stability_class(rotation_generator()).kind, Stability::Marginal);
  EXPECT_EQ(stability_class(RealMatrix::Identity(2, 2)).kind, Stability::Unstable);
  const StabilityClass sc = stability_class(-2.0 * RealMatrix::Identity(2, 2));
  EXPECT_NEAR(sc.max_real_part, -2.0, 1e-14);
  EXPECT_STREQ(to_string(Stability::Marginal), "marginal");
}

// Dispersive-damped open loop has a zero-frequency mode in the first cavity.
TEST(StabilityClass, DispersiveFirstCavityIsMarginal) {
  NetworkParams p;
  EXPECT_EQ(stability_class(ideal_closed_form(p).a).kind, Stability::Marginal);
}

}  // namespace
}  // namespace gaussnet
