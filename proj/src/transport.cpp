#include "zeroflow/transport.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace zeroflow {

namespace {

constexpr int kCellSub = 8;  // Simpson subdivisions per grid cell

double checked_inv_b(const CoefficientField& b, double x) {
  const double v = b(x);
  if (!(v > 0.0)) {
    throw std::runtime_error("transport coefficient b must be positive, b(" +
                             std::to_string(x) + ")=" + std::to_string(v));
  }
  return 1.0 / v;
}

/// Suffix integrals int_{x_i}^1 f over the uniform grid plus continuous
/// evaluation inside cells; shared by the travel-time and weight tables.
struct SuffixIntegral {
  std::vector<double> table;
  std::function<double(double)> f;
  double h = 0.0;

  static SuffixIntegral build(std::function<double(double)> f, std::size_t n) {
    SuffixIntegral s;
    s.f = std::move(f);
    s.h = 1.0 / static_cast<double>(n - 1);
    s.table.assign(n, 0.0);
    for (std::size_t i = n - 1; i-- > 0;) {
      const double lo = static_cast<double>(i) * s.h;
      const double hi = static_cast<double>(i + 1) * s.h;
      s.table[i] = s.table[i + 1] + simpson(s.f, lo, hi, kCellSub);
    }
    return s;
  }

  // int_x^1 f for x in [0,1].
  double eval(double x) const {
    const std::size_t n = table.size();
    const double s = std::clamp(x, 0.0, 1.0) / h;
    const auto j = static_cast<std::size_t>(
        std::min(std::floor(s), static_cast<double>(n - 2)));
    const double xj1 = static_cast<double>(j + 1) * h;
    return table[j + 1] + simpson(f, std::clamp(x, 0.0, 1.0), xj1, kCellSub);
  }
};

SuffixIntegral weight_integral(const TransportProblem& problem, std::size_t n) {
  const CoefficientField b = problem.b;
  const CoefficientField c = problem.c;
  return SuffixIntegral::build(
      [b, c](double x) { return c(x) * checked_inv_b(b, x); }, n);
}

}  // namespace

CharacteristicMap CharacteristicMap::build(const CoefficientField& b, std::size_t n) {
  if (n < 33) throw std::invalid_argument("build_characteristics needs n >= 33");
  CharacteristicMap cm;
  cm.b_ = b;
  cm.n_ = n;
  auto suffix = SuffixIntegral::build([b](double x) { return checked_inv_b(b, x); }, n);
  cm.suffix_ = suffix.table;
  cm.r_ = cm.suffix_[0];
  cm.theta_table_.resize(n);
  for (std::size_t i = 0; i < n; ++i) cm.theta_table_[i] = -cm.suffix_[i];
  cm.xi_table_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double theta_j = -cm.r_ + cm.r_ * static_cast<double>(j) / static_cast<double>(n - 1);
    cm.xi_table_[j] = cm.xi(theta_j);
  }
  return cm;
}

double CharacteristicMap::inv_b_partial(double from, double to) const {
  const CoefficientField& b = b_;
  return simpson([&b](double x) { return checked_inv_b(b, x); }, from, to, kCellSub);
}

double CharacteristicMap::theta(double xi) const {
  const double h = 1.0 / static_cast<double>(n_ - 1);
  const double x = std::clamp(xi, 0.0, 1.0);
  const auto j = static_cast<std::size_t>(
      std::min(std::floor(x / h), static_cast<double>(n_ - 2)));
  const double xj1 = static_cast<double>(j + 1) * h;
  return -(suffix_[j + 1] + inv_b_partial(x, xj1));
}

double CharacteristicMap::xi(double theta_star) const {
  const double slack = 1e-9 * (1.0 + r_);
  if (theta_star < -r_ - slack || theta_star > slack) {
    throw std::invalid_argument("theta outside [-r, 0]: " + std::to_string(theta_star));
  }
  const double t = std::clamp(theta_star, -r_, 0.0);
  if (t <= -r_) return 0.0;
  if (t >= 0.0) return 1.0;

  // Bracketing cell from the table, then safeguarded Newton.
  auto it = std::lower_bound(theta_table_.begin(), theta_table_.end(), t);
  std::size_t j = static_cast<std::size_t>(std::distance(theta_table_.begin(), it));
  if (j == 0) j = 1;
  if (j > n_ - 1) j = n_ - 1;
  const double h = 1.0 / static_cast<double>(n_ - 1);
  double lo = static_cast<double>(j - 1) * h;
  double hi = static_cast<double>(j) * h;
  const double th_lo = theta_table_[j - 1];
  const double th_hi = theta_table_[j];
  double x = lo + (t - th_lo) / (th_hi - th_lo) * (hi - lo);
  for (int iter = 0; iter < 100; ++iter) {
    const double g = theta(x) - t;
    if (std::abs(g) <= 1e-12) return x;
    if (g > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    double next = x - g * b_(x);  // theta' = 1/b
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  return x;
}

void CharacteristicMap::write_csv(std::ostream& os) const {
  os << "xi,theta\n";
  char buf[96];
  const double h = 1.0 / static_cast<double>(n_ - 1);
  for (std::size_t i = 0; i < n_; ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", static_cast<double>(i) * h,
                  theta_table_[i]);
    os << buf;
  }
}

GridFunction apply_h(const History& psi, const TransportProblem& problem,
                     const CharacteristicMap& cmap) {
  if (std::abs(psi.r - cmap.r()) > 1e-9 * (1.0 + cmap.r())) {
    throw std::invalid_argument("history span " + std::to_string(psi.r) +
                                " does not match characteristic r " +
                                std::to_string(cmap.r()));
  }
  const std::size_t n = cmap.size();
  const auto weights = weight_integral(problem, n);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta_i = cmap.theta_table()[i];
    out[i] = psi.value_at(theta_i) * std::exp(weights.table[i]);
  }
  return GridFunction(std::move(out));
}

History apply_h_inv(const GridFunction& phi, const TransportProblem& problem,
                    const CharacteristicMap& cmap, std::size_t m) {
  if (m == 0) m = cmap.size() - 1;
  if (m < 1) throw std::invalid_argument("apply_h_inv needs m >= 1");
  const double r = cmap.r();
  const auto weights = weight_integral(problem, cmap.size());
  std::vector<double> out(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    const double theta_j = -r + r * static_cast<double>(j) / static_cast<double>(m);
    const double x = cmap.xi(theta_j);
    out[j] = phi.value_at(x) * std::exp(-weights.eval(x));
  }
  return History(std::move(out), r);
}

double interior_solution(const GridFunction& phi0, double x, double t,
                         const TransportProblem& problem, const CharacteristicMap& cmap) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("x outside [0,1]");
  if (t < 0.0) throw std::invalid_argument("t must be nonnegative");
  const double theta_x = cmap.theta(x);
  if (theta_x + t > 1e-12) {
    throw std::runtime_error("(x,t) outside the characteristic region: t=" +
                             std::to_string(t) + " exceeds " + std::to_string(-theta_x));
  }
  const double foot = cmap.xi(std::min(theta_x + t, 0.0));
  const auto weights = weight_integral(problem, cmap.size());
  return phi0.value_at(foot) * std::exp(weights.eval(x) - weights.eval(foot));
}

namespace {

// 4-point Lagrange read of the uniform trail at fractional index s.
double trail_value(const std::vector<double>& trail, double s) {
  const std::size_t n = trail.size();
  const double sc = std::clamp(s, 0.0, static_cast<double>(n - 1));
  if (n < 4) {
    const auto j = static_cast<std::size_t>(
        std::min(std::floor(sc), static_cast<double>(n - 2)));
    const double t = sc - static_cast<double>(j);
    return (1.0 - t) * trail[j] + t * trail[j + 1];
  }
  const auto cell = static_cast<std::ptrdiff_t>(std::floor(sc));
  const auto lo = std::clamp<std::ptrdiff_t>(cell - 1, 0, static_cast<std::ptrdiff_t>(n) - 4);
  const double t = sc - static_cast<double>(lo);
  const double l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
  const double l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
  const double l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
  const double l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
  const auto j = static_cast<std::size_t>(lo);
  return l0 * trail[j] + l1 * trail[j + 1] + l2 * trail[j + 2] + l3 * trail[j + 3];
}

}  // namespace

Trajectory evolve(const TransportProblem& problem, const GridFunction& phi0, double T,
                  double dt, const CharacteristicMap& cmap, int record_every,
                  Tolerance tol, bool store_snapshots) {
  if (!(T > 0.0)) throw std::invalid_argument("evolve needs T > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("evolve needs dt > 0");
  if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");

  const double r = cmap.r();
  const auto m = static_cast<std::size_t>(std::max(1L, std::lround(r / dt)));
  const double dt_eff = r / static_cast<double>(m);
  const long steps = std::lround(T / dt_eff);
  if (steps < 1) throw std::invalid_argument("T shorter than one step");

  const History y0 = apply_h_inv(phi0, problem, cmap, m);
  const auto weights = weight_integral(problem, cmap.size());
  const double w0 = std::exp(weights.table[0]);  // boundary read of h at xi = 0
  const double a = problem.a_coef;
  const double at = problem.alpha_tilde;

  std::vector<double> trail = y0.values;  // trail[k] = y(-r + k*dt_eff)
  trail.reserve(m + 1 + static_cast<std::size_t>(steps));

  const std::size_t n = cmap.size();
  std::vector<double> snap(n);
  const auto reconstruct = [&](long k) {
    const double base = static_cast<double>(k) + static_cast<double>(m);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = base + cmap.theta_table()[i] / dt_eff;
      snap[i] = trail_value(trail, s) * std::exp(weights.table[i]);
    }
  };

  Trajectory traj;
  traj.snapshot_span = 1.0;
  reconstruct(0);
  traj.record(0.0, snap, tol, store_snapshots);

  for (long k = 0; k < steps; ++k) {
    const std::size_t idx_now = static_cast<std::size_t>(k) + m;
    const double y_now = trail[idx_now];
    const double k1 = a * w0 * trail[k] + at * y_now;
    const double pred = y_now + dt_eff * k1;
    const double k2 = a * w0 * trail[k + 1] + at * pred;
    const double y_next = y_now + 0.5 * dt_eff * (k1 + k2);
    if (!std::isfinite(y_next)) {
      throw std::runtime_error("boundary trace became non-finite at t=" +
                               std::to_string((k + 1) * dt_eff));
    }
    trail.push_back(y_next);
    const long kk = k + 1;
    if (kk % record_every == 0 || kk == steps) {
      reconstruct(kk);
      traj.record(kk * dt_eff, snap, tol, store_snapshots);
    }
  }
  return traj;
}

bool zero_conjugacy_check(const History& psi, const TransportProblem& problem,
                          const CharacteristicMap& cmap, Tolerance tol) {
  const GridFunction mapped = apply_h(psi, problem, cmap);
  return zero_number(psi.values, tol).z == zero_number(mapped, tol).z;
}

std::function<GridFunction(const GridFunction&, double)> make_transport_semigroup(
    const TransportProblem& problem, const CharacteristicMap& cmap) {
  const auto weights = weight_integral(problem, cmap.size());
  return [problem, cmap, weights](const GridFunction& phi, double t) -> GridFunction {
    if (phi.size() != cmap.size()) {
      throw std::invalid_argument("semigroup input has wrong grid size");
    }
    if (t <= 0.0) return phi;
    const double r = cmap.r();
    if (t >= r) throw std::invalid_argument("transport semigroup oracle needs t < r");

    // Boundary trace history read straight off phi.
    const auto y_past = [&](double s) {
      const double x = cmap.xi(std::clamp(s, -r, 0.0));
      return phi.value_at(x) * std::exp(-weights.eval(x));
    };
    const double w0 = std::exp(weights.table[0]);
    const double a = problem.a_coef;
    const double at = problem.alpha_tilde;
    const auto rhs = [&](double s, double y) { return at * y + a * w0 * y_past(s - r); };

    // Trace value at s in (0, t] by fixed-step RK4 from 0.
    const auto y_future = [&](double s) {
      const int nsub = 32;
      const double hstep = s / nsub;
      double y = y_past(0.0);
      for (int k = 0; k < nsub; ++k) {
        const double s0 = k * hstep;
        const double k1 = rhs(s0, y);
        const double k2 = rhs(s0 + 0.5 * hstep, y + 0.5 * hstep * k1);
        const double k3 = rhs(s0 + 0.5 * hstep, y + 0.5 * hstep * k2);
        const double k4 = rhs(s0 + hstep, y + hstep * k3);
        y += hstep / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      return y;
    };

    std::vector<double> out(cmap.size());
    for (std::size_t i = 0; i < cmap.size(); ++i) {
      const double s = t + cmap.theta_table()[i];
      const double y = (s <= 0.0) ? y_past(s) : y_future(s);
      out[i] = y * std::exp(weights.table[i]);
    }
    return GridFunction(std::move(out));
  };
}

}  // namespace zeroflow
