#include "gaussnet/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace gaussnet {
namespace {

template <typename State, typename Rhs, typename Sample>
void rk4_loop(State x, const Rhs& rhs, const TimeGrid& grid, int stride,
              const Sample& sample, bool symmetrize) {
  if (stride < 1) throw ConfigurationError("output stride must be >= 1");
  sample(0.0, x);
  for (long step = 1; step <= grid.steps; ++step) {
    const double t0 = grid.time(step - 1);
    const double h = grid.time(step) - t0;
    const State k1 = rhs(x);
    const State k2 = rhs(State(x + 0.5 * h * k1));
    const State k3 = rhs(State(x + 0.5 * h * k2));
    const State k4 = rhs(State(x + h * k3));
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if constexpr (std::is_same_v<State, RealMatrix>) {
      if (symmetrize) x = 0.5 * (x + x.transpose()).eval();
    }
    if (!x.allFinite()) {
      throw DivergenceError(
          "integration diverged at t = " + std::to_string(grid.time(step)),
          grid.time(step));
    }
    if (step % stride == 0 || step == grid.steps) sample(grid.time(step), x);
  }
}

void require_square(const RealMatrix& a, long dim, const char* what) {
  if (a.rows() != a.cols() || a.rows() != dim) {
    throw DimensionError(std::string(what) + " has incompatible dimensions");
  }
}

}  // namespace

TimeGrid::TimeGrid(double t_end_, double dt_) : t_end(t_end_), dt(dt_) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ConfigurationError("time step must be positive and finite");
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw ConfigurationError("end time must be non-negative and finite");
  }
  steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
  if (steps < 0) steps = 0;
}

double TimeGrid::time(long step) const {
  return step >= steps ? t_end : static_cast<double>(step) * dt;
}

Trajectory propagate_covariance(
    const std::function<RealMatrix(const RealMatrix&)>& rhs,
    const CovarianceMatrix& v0, double t_end, double dt, int stride) {
  Trajectory out;
  const TimeGrid grid(t_end, dt);
  rk4_loop<RealMatrix>(
      v0.matrix(), rhs, grid, stride,
      [&](double t, const RealMatrix& v) {
        out.times.push_back(t);
        out.covariances.emplace_back(v);
      },
      true);
  return out;
}

Trajectory propagate_lyapunov(const DriftDiffusion& dd,
                              const CovarianceMatrix& v0, double t_end,
                              double dt, int stride) {
  require_square(dd.a, v0.dim(), "drift");
  require_square(dd.d, v0.dim(), "diffusion");
  const RealMatrix& a = dd.a;
  const RealMatrix& d = dd.d;
  return propagate_covariance(
      [&](const RealMatrix& v) -> RealMatrix {
        RealMatrix av = a * v;
        return av + av.transpose() + d;
      },
      v0, t_end, dt, stride);
}

Trajectory propagate_mean(const RealMatrix& a, const MeanVector& m0,
                          double t_end, double dt, int stride) {
  require_square(a, m0.dim(), "drift");
  Trajectory out;
  const TimeGrid grid(t_end, dt);
  rk4_loop<RealVector>(
      m0.vector(), [&](const RealVector& x) -> RealVector { return a * x; },
      grid, stride,
      [&](double t, const RealVector& x) {
        out.times.push_back(t);
        out.means.emplace_back(x);
      },
      false);
  return out;
}

RealMatrix solve_lyapunov(const RealMatrix& a, const RealMatrix& q) {
  const long n = a.rows();
  require_square(a, n, "Lyapunov drift");
  require_square(q, n, "Lyapunov constant term");
  // Column-major vec: vec(A X + X A^T) = (I (x) A + A (x) I) vec(X).
  RealMatrix op = RealMatrix::Zero(n * n, n * n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      op.block(i * n, i * n, n, n).col(j) += a.col(j);
      op.block(i * n, j * n, n, n).diagonal().array() += a(i, j);
    }
  }
  const RealVector rhs = -Eigen::Map<const RealVector>(q.data(), n * n);
  const RealVector x = op.fullPivLu().solve(rhs);
  RealMatrix v = Eigen::Map<const RealMatrix>(x.data(), n, n);
  return 0.5 * (v + v.transpose());
}

RealMatrix lyapunov_residual(const DriftDiffusion& dd, const RealMatrix& v) {
  return dd.a * v + v * dd.a.transpose() + dd.d;
}

CovarianceMatrix steady_lyapunov(const DriftDiffusion& dd) {
  require_square(dd.d, dd.a.rows(), "diffusion");
  const StabilityClass sc = stability_class(dd.a);
  if (sc.kind != Stability::Stable) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", sc.max_real_part);
    throw NoSteadyStateError(std::string("drift is ") + to_string(sc.kind) +
                             " (max Re(lambda) = " + buf + "); no steady state");
  }
  return CovarianceMatrix(solve_lyapunov(dd.a, dd.d));
}

StabilityClass stability_class(const RealMatrix& a, double tol) {
  if (a.rows() != a.cols()) throw DimensionError("drift must be square");
  Eigen::EigenSolver<RealMatrix> es(a, false);
  StabilityClass out;
  out.eigenvalues = es.eigenvalues();
  out.max_real_part = out.eigenvalues.real().maxCoeff();
  if (out.max_real_part < -tol) {
    out.kind = Stability::Stable;
  } else if (out.max_real_part <= tol) {
    out.kind = Stability::Marginal;
  } else {
    out.kind = Stability::Unstable;
  }
  return out;
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Stable:
      return "stable";
    case Stability::Marginal:
      return "marginal";
    case Stability::Unstable:
      return "unstable";
  }
  return "unknown";
}

}  // namespace gaussnet
