#include "gaussnet/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace gaussnet {
namespace {

struct CareForm {
  RealMatrix a;  // A' = A_o + 2 s r^T
  RealMatrix q;  // Q = D_o - s s^T
  RealMatrix r;  // R' = 4 r r^T
};

void check_design_inputs(const DriftDiffusion& open_loop,
                         const ComplexVector& coupling) {
  const long n = coupling.size();
  if (n == 0 || n % 2 != 0) {
    throw DimensionError("coupling vector must have 2N entries");
  }
  if (open_loop.a.rows() != n || open_loop.a.cols() != n ||
      open_loop.d.rows() != n || open_loop.d.cols() != n) {
    throw DimensionError("open-loop drift/diffusion do not match the coupling");
  }
}

CareForm care_form(const DriftDiffusion& open_loop,
                   const ComplexVector& coupling) {
  check_design_inputs(open_loop, coupling);
  const SymplecticForm sigma(static_cast<int>(coupling.size() / 2));
  const RealVector r = coupling.real();
  const RealVector s = sigma.matrix() * coupling.imag();
  return CareForm{open_loop.a + 2.0 * s * r.transpose(),
                  open_loop.d - s * s.transpose(),
                  4.0 * r * r.transpose()};
}

RealMatrix care_residual(const CareForm& c, const RealMatrix& v) {
  const RealMatrix av = c.a * v;
  return av + av.transpose() + c.q - v * c.r * v;
}

bool hurwitz(const RealMatrix& a) {
  return stability_class(a).kind == Stability::Stable;
}

// Bass-type pole shift: for rho beyond the spectrum of -A', W solving
// (A'^T + rho I) W + W (A' + rho I) = 2 R' is positive definite when the
// pair is observable, and V = W^{-1} places the spectrum of A' - V R' to
// the left of -rho.
std::optional<RealMatrix> stabilizing_guess(const CareForm& c,
                                            const std::vector<double>& grid) {
  const long n = c.a.rows();
  const double base =
      std::max(0.0, -Eigen::EigenSolver<RealMatrix>(c.a, false)
                         .eigenvalues()
                         .real()
                         .minCoeff());
  for (double shift : grid) {
    const double rho = base + shift;
    const RealMatrix shifted =
        c.a.transpose() + rho * RealMatrix::Identity(n, n);
    const RealMatrix w = solve_lyapunov(shifted, -2.0 * c.r);
    Eigen::FullPivLU<RealMatrix> lu(w);
    if (!lu.isInvertible()) continue;
    RealMatrix v = lu.inverse();
    v = 0.5 * (v + v.transpose());
    if (v.allFinite() && hurwitz(c.a - v * c.r)) return v;
  }
  return std::nullopt;
}

}  // namespace

RealMatrix riccati_residual(const DriftDiffusion& open_loop,
                            const ComplexVector& coupling,
                            const RealMatrix& v) {
  check_design_inputs(open_loop, coupling);
  const SymplecticForm sigma(static_cast<int>(coupling.size() / 2));
  const RealVector b =
      2.0 * v * coupling.real() - sigma.matrix() * coupling.imag();
  const RealMatrix av = open_loop.a * v;
  return av + av.transpose() + open_loop.d - b * b.transpose();
}

RealVector design_feedback(const RealMatrix& v, const ComplexVector& coupling) {
  if (v.rows() != coupling.size() || v.cols() != coupling.size() ||
      coupling.size() % 2 != 0) {
    throw DimensionError("feedback design needs a 2N x 2N covariance");
  }
  const SymplecticForm sigma(static_cast<int>(coupling.size() / 2));
  return 2.0 * sigma.matrix() * v * coupling.real() + coupling.imag();
}

RealMatrix newton_kleinman(const RealMatrix& a, const RealMatrix& q,
                           const RealMatrix& r, RealMatrix v,
                           double tolerance, int max_iterations,
                           std::vector<double>* history, int* iterations) {
  const CareForm c{a, q, r};
  std::vector<double> local;
  std::vector<double>& hist = history ? *history : local;
  double res = max_abs(care_residual(c, v));
  hist.push_back(res);
  int it = 0;
  while (res > tolerance) {
    if (it == max_iterations) {
      throw SolverError("Newton-Kleinman did not converge in " +
                            std::to_string(max_iterations) + " iterations",
                        hist);
    }
    const RealMatrix closed = a - v * r;
    if (!hurwitz(closed)) {
      throw SolverError("Newton-Kleinman iterate lost closed-loop stability",
                        hist);
    }
    v = solve_lyapunov(closed, q + v * r * v);
    ++it;
    res = max_abs(care_residual(c, v));
    hist.push_back(res);
    if (!std::isfinite(res)) {
      throw SolverError("Newton-Kleinman iterate is not finite", hist);
    }
  }
  if (iterations) *iterations = it;
  return v;
}

RiccatiSolution solve_riccati(const DriftDiffusion& open_loop,
                              const ComplexVector& coupling,
                              const RiccatiOptions& options) {
  const CareForm c = care_form(open_loop, coupling);
  if (coupling.real().cwiseAbs().maxCoeff() == 0.0) {
    throw ConfigurationError(
        "Re(l) = 0: the homodyne signal carries no information");
  }

  std::vector<double> history;
  auto finish = [&](const RealMatrix& v, int iterations,
                    RiccatiMethod method) {
    const RealMatrix sym = 0.5 * (v + v.transpose());
    return RiccatiSolution{CovarianceMatrix(sym),
                           design_feedback(sym, coupling),
                           max_abs(care_residual(c, sym)),
                           sym.determinant(),
                           iterations,
                           method,
                           history};
  };

  if (auto guess = stabilizing_guess(c, options.shift_grid)) {
    try {
      int iterations = 0;
      const RealMatrix v =
          newton_kleinman(c.a, c.q, c.r, *guess, options.tolerance,
                          options.max_iterations, &history, &iterations);
      if (hurwitz(c.a - v * c.r)) {
        return finish(v, iterations, RiccatiMethod::NewtonKleinman);
      }
    } catch (const SolverError&) {
      // fall through to the propagation route
    }
  }

  // Fallback: integrate dV/dt = R(V) (the time-variant feedback law) from
  // the vacuum until it settles, then polish with Newton.
  const int modes = static_cast<int>(coupling.size() / 2);
  try {
    const Trajectory traj = propagate_time_variant_feedback(
        open_loop, coupling, CovarianceMatrix::vacuum(modes),
        options.fallback_t_end, options.fallback_dt,
        static_cast<int>(
            std::ceil(options.fallback_t_end / options.fallback_dt)));
    const RealMatrix settled = traj.covariances.back().matrix();
    if (hurwitz(c.a - settled * c.r)) {
      int iterations = 0;
      const RealMatrix v =
          newton_kleinman(c.a, c.q, c.r, settled, options.tolerance,
                          options.max_iterations, &history, &iterations);
      if (hurwitz(c.a - v * c.r)) {
        return finish(v, iterations, RiccatiMethod::PropagationFallback);
      }
    }
  } catch (const NumericalError&) {
    // diverged or stagnated; reported below
  }
  std::ostringstream msg;
  msg << "no stabilizing Riccati solution found; residual history:";
  for (double h : history) msg << ' ' << h;
  throw SolverError(msg.str(), history);
}

Trajectory propagate_time_variant_feedback(const DriftDiffusion& open_loop,
                                           const ComplexVector& coupling,
                                           const CovarianceMatrix& v0,
                                           double t_end, double dt,
                                           int stride) {
  check_design_inputs(open_loop, coupling);
  return propagate_covariance(
      [&](const RealMatrix& v) -> RealMatrix {
        return riccati_residual(open_loop, coupling, v);
      },
      v0, t_end, dt, stride);
}

}  // namespace gaussnet
