#include "zeroflow/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace zeroflow {

namespace {

std::vector<double> blended_samples(const CoefficientField& early,
                                    const std::optional<CoefficientField>& late,
                                    double blend_time, double t_now, std::size_t n) {
  const GridFunction g = sample(early, n);
  std::vector<double> out(g.values().begin(), g.values().end());
  if (late && blend_time > 0.0) {
    const double w = std::clamp(t_now / blend_time, 0.0, 1.0);
    if (w > 0.0) {
      const GridFunction gl = sample(*late, n);
      for (std::size_t i = 0; i < n; ++i) out[i] += w * (gl[i] - out[i]);
    }
  }
  return out;
}

}  // namespace

ParabolicOperator assemble(const ParabolicProblem& problem, std::size_t n, double dt,
                           double t_now) {
  if (n < 3) throw std::invalid_argument("assemble needs n >= 3");
  if (!(dt > 0.0)) throw std::invalid_argument("assemble needs dt > 0");

  const double h = 1.0 / static_cast<double>(n - 1);
  const GridFunction a = sample(problem.a, n);
  const std::vector<double> b = blended_samples(problem.b, problem.b_late, problem.blend_time, t_now, n);
  const std::vector<double> c = blended_samples(problem.c, problem.c_late, problem.blend_time, t_now, n);

  ParabolicOperator op;
  op.n_ = n;
  op.dt_ = dt;
  op.neumann_ = problem.bc.is_neumann();

  double max_c = c[0];
  for (double v : c) max_c = std::max(max_c, v);
  if (dt * max_c >= 1.0) {
    throw std::runtime_error("stability error: dt*max(c) >= 1 (dt=" + std::to_string(dt) + ")");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < 0.0 || (!problem.allow_degenerate_diffusion && a[i] == 0.0)) {
      throw std::runtime_error("diffusion coefficient not positive at x=" +
                               std::to_string(a.x(i)));
    }
    if (a[i] == 0.0) op.degenerate_diffusion_ = true;
  }

  auto& lo = op.lower_;
  auto& di = op.diag_;
  auto& up = op.upper_;
  lo.assign(n, 0.0);
  di.assign(n, 0.0);
  up.assign(n, 0.0);

  // Interior rows of (I - dt*L): centered diffusion, upwinded drift.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double diff = a[i] / (h * h);
    const double bp = std::max(b[i], 0.0);
    const double bm = std::max(-b[i], 0.0);
    lo[i] = -dt * (diff + bm / h);
    up[i] = -dt * (diff + bp / h);
    di[i] = 1.0 + dt * (2.0 * diff + (bp + bm) / h - c[i]);
  }

  if (op.neumann_) {
    // Mirror-image rows: the ghost value equals the inner neighbor, which
    // keeps the matrix tridiagonal with the M-matrix sign pattern.
    const double diff0 = 2.0 * a[0] / (h * h);
    const double drift0 = std::abs(b[0]) / h;
    di[0] = 1.0 + dt * (diff0 + drift0 - c[0]);
    up[0] = -dt * (diff0 + drift0);
    const double diffN = 2.0 * a[n - 1] / (h * h);
    const double driftN = std::abs(b[n - 1]) / h;
    di[n - 1] = 1.0 + dt * (diffN + driftN - c[n - 1]);
    lo[n - 1] = -dt * (diffN + driftN);
    op.core_ = TridiagonalSolver(lo, di, up);
    return op;
  }

  // Non-separated constraint rows (second-order one-sided stencils), with
  // the top row negated so both boundary pivots are positive.
  const auto& bc = problem.bc;
  di[0] = 3.0 / (2.0 * h) - bc.d00;
  up[0] = -2.0 / h;
  op.extra_top_ = 1.0 / (2.0 * h);
  op.corner_top_ = -bc.d01;
  di[n - 1] = 3.0 / (2.0 * h) + bc.d11;
  lo[n - 1] = -2.0 / h;
  op.extra_bottom_ = 1.0 / (2.0 * h);
  op.corner_bottom_ = bc.d10;

  // Reduce the (0,2) and (n-1,n-3) entries against the adjacent interior
  // rows, then border the last unknown on the tridiagonal core.
  const std::size_t nb = n - 1;  // core size
  std::vector<double> core_lo(nb, 0.0), core_di(nb, 0.0), core_up(nb, 0.0), f(nb, 0.0);
  double g0 = op.corner_bottom_;
  double gn2 = lo[n - 1];
  double d_border = di[n - 1];

  core_di[0] = di[0];
  core_up[0] = up[0];
  double f0 = op.corner_top_;
  if (n == 3) {
    f0 += op.extra_top_;  // the extra lands in the border column
    g0 += op.extra_bottom_;
  } else {
    op.mu_top_ = op.extra_top_ / up[1];
    core_di[0] -= op.mu_top_ * lo[1];
    core_up[0] -= op.mu_top_ * di[1];
    op.mu_bottom_ = op.extra_bottom_ / lo[n - 2];
    gn2 -= op.mu_bottom_ * di[n - 2];
    d_border -= op.mu_bottom_ * up[n - 2];
  }
  f[0] = f0;
  for (std::size_t i = 1; i < nb; ++i) {
    core_lo[i] = lo[i];
    core_di[i] = di[i];
    core_up[i] = (i + 1 < nb) ? up[i] : 0.0;
  }
  f[nb - 1] = up[n - 2];

  op.core_ = TridiagonalSolver(std::move(core_lo), std::move(core_di), std::move(core_up));
  op.border_q_ = op.core_.solve(f);
  op.border_g0_ = g0;
  op.border_gn2_ = gn2;
  op.border_d_ = d_border;
  op.border_denom_ = d_border - g0 * op.border_q_[0] - gn2 * op.border_q_[nb - 1];
  const double scale = std::abs(d_border) + std::abs(g0) + std::abs(gn2) + 1.0;
  if (!std::isfinite(op.border_denom_) || std::abs(op.border_denom_) < 1e-14 * scale) {
    throw std::runtime_error("singular implicit system (dt=" + std::to_string(dt) + ")");
  }
  return op;
}

double ParabolicOperator::entry(std::size_t i, std::size_t j) const {
  double e = 0.0;
  if (i == j) e += diag_[i];
  if (i > 0 && j + 1 == i) e += lower_[i];
  if (j == i + 1) e += upper_[i];
  if (i == 0 && j == 2) e += extra_top_;
  if (i == n_ - 1 && j == n_ - 3) e += extra_bottom_;
  if (i == 0 && j == n_ - 1) e += corner_top_;
  if (i == n_ - 1 && j == 0) e += corner_bottom_;
  return e;
}

std::vector<double> ParabolicOperator::apply_step(std::span<const double> u) const {
  if (u.size() != n_) throw std::invalid_argument("state length does not match operator");
  if (neumann_) return core_.solve(u);

  const std::size_t nb = n_ - 1;
  std::vector<double> rhs(nb);
  rhs[0] = -mu_top_ * u[1];
  for (std::size_t i = 1; i < nb; ++i) rhs[i] = u[i];
  const double rhs_border = -mu_bottom_ * u[n_ - 2];

  const std::vector<double> p = core_.solve(rhs);
  const double xb =
      (rhs_border - border_g0_ * p[0] - border_gn2_ * p[nb - 1]) / border_denom_;
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < nb; ++i) out[i] = p[i] - xb * border_q_[i];
  out[n_ - 1] = xb;
  return out;
}

GridFunction step(const GridFunction& state, const ParabolicOperator& op) {
  auto next = op.apply_step(state.values());
  for (double v : next) {
    if (!std::isfinite(v)) {
      throw std::runtime_error("implicit solve produced non-finite state (dt=" +
                               std::to_string(op.dt()) + ")");
    }
  }
  return GridFunction(std::move(next));
}

Trajectory simulate(const ParabolicProblem& problem, const GridFunction& u0, double T,
                    double dt, int record_every, Tolerance tol, bool store_snapshots) {
  if (!(T > 0.0)) throw std::invalid_argument("simulate needs T > 0");
  if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");
  const long steps = std::lround(T / dt);
  if (steps < 1) throw std::invalid_argument("T shorter than one step");

  Trajectory traj;
  traj.snapshot_span = 1.0;
  traj.record(0.0, u0.values(), tol, store_snapshots);

  GridFunction u = u0;
  ParabolicOperator op = assemble(problem, u0.size(), dt, 0.0);
  for (long k = 1; k <= steps; ++k) {
    if (problem.time_dependent()) op = assemble(problem, u0.size(), dt, (k - 1) * dt);
    u = step(u, op);
    if (k % record_every == 0 || k == steps) {
      traj.record(k * dt, u.values(), tol, store_snapshots);
    }
  }
  return traj;
}

std::function<GridFunction(const GridFunction&, double)> make_parabolic_semigroup(
    const ParabolicProblem& problem, std::size_t n, int substeps) {
  if (substeps < 1) throw std::invalid_argument("substeps must be >= 1");
  return [problem, n, substeps](const GridFunction& phi, double t) -> GridFunction {
    if (phi.size() != n) throw std::invalid_argument("semigroup input has wrong grid size");
    if (t <= 0.0) return phi;
    const ParabolicOperator op = assemble(problem, n, t / substeps, 0.0);
    GridFunction u = phi;
    for (int k = 0; k < substeps; ++k) u = step(u, op);
    return u;
  };
}

}  // namespace zeroflow
