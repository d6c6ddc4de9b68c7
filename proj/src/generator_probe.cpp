#include "zeroflow/generator_probe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace zeroflow {

namespace {

// C2 smoothstep; flat to second order at both ends so tapered profiles meet
// derivative boundary conditions.
double smoothstep5(double u) {
  const double t = std::clamp(u, 0.0, 1.0);
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

// Taper profile: 1 on [xi-rho, xi+rho], easing to 0 toward both domain ends.
// left/right spans of zero width mean the plateau touches that end.
struct Taper {
  double xi, rho;
  double left_span, right_span;

  double operator()(double x) const {
    if (x < xi - rho) {
      return left_span > 0.0 ? smoothstep5(x / left_span) : 1.0;
    }
    if (x > xi + rho) {
      return right_span > 0.0 ? smoothstep5((1.0 - x) / right_span) : 1.0;
    }
    return 1.0;
  }
};

Taper make_taper(double xi, std::size_t n, double width) {
  const double dist = std::min(xi, 1.0 - xi);
  double rho;
  if (dist <= 0.0) {
    rho = std::min(width, 1.0) / 2.0;  // boundary xi: plateau reaches the end
  } else {
    rho = std::min(width, dist) / 2.0;
  }
  const double h = 1.0 / static_cast<double>(n - 1);
  rho = std::max(rho, 2.5 * h);  // keep the stencil inside the plateau
  Taper t;
  t.xi = xi;
  t.rho = rho;
  t.left_span = std::max(xi - rho, 0.0);
  t.right_span = std::max(1.0 - xi - rho, 0.0);
  return t;
}

}  // namespace

TestTriple build_test_functions(double xi, std::size_t n, double width) {
  if (xi < 0.0 || xi > 1.0) throw std::invalid_argument("xi outside [0,1]");
  if (n < 9) throw std::invalid_argument("build_test_functions needs n >= 9");
  const double h = 1.0 / static_cast<double>(n - 1);
  const auto ix = static_cast<std::size_t>(std::lround(xi * static_cast<double>(n - 1)));
  const double xs = static_cast<double>(ix) * h;  // snap to the nearest node

  const Taper m = make_taper(xs, n, width);
  const auto slope = [&m, xs](double s) { return (s - xs) * m(s); };

  // a accumulates its own derivative so the monotone growth condition holds
  // across the tapers as well.
  std::vector<double> a(n, 0.0);
  for (std::size_t j = ix + 1; j < n; ++j) {
    a[j] = a[j - 1] + simpson(slope, (j - 1) * h, j * h, 8);
  }
  for (std::size_t j = ix; j-- > 0;) {
    a[j] = a[j + 1] - simpson(slope, j * h, (j + 1) * h, 8);
  }

  std::vector<double> b(n);
  for (std::size_t j = 0; j < n; ++j) b[j] = slope(j * h);

  TestTriple out{GridFunction(std::move(a)), GridFunction(std::move(b)),
                 sample(CoefficientField::constant(1.0), n), xs, ix,
                 ix == 0 || ix == n - 1};
  if (out.boundary_limited) out.b_fn = out.a_fn;  // unit-slope clause is interior-only
  return out;
}

GridFunction estimate_A(const SemigroupOracle& semigroup, const GridFunction& phi,
                        double t_small) {
  if (!(t_small > 0.0)) throw std::invalid_argument("estimate_A needs t_small > 0");
  const GridFunction full = semigroup(phi, t_small);
  const GridFunction half = semigroup(phi, 0.5 * t_small);
  std::vector<double> out(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double d_full = (full[i] - phi[i]) / t_small;
    const double d_half = (half[i] - phi[i]) / (0.5 * t_small);
    out[i] = (4.0 * d_half - d_full) / 3.0;
  }
  return GridFunction(std::move(out));
}

bool GeneratorEstimate::alpha_nonnegative(double tol_alpha) const {
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < -tol_alpha) return false;
  }
  return true;
}

void GeneratorEstimate::write_csv(std::ostream& os) const {
  os << "x,alpha,beta,gamma\n";
  char buf[160];
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", alpha.x(i), alpha[i],
                  beta[i], gamma[i]);
    os << buf;
  }
}

GeneratorEstimate extract_coefficients(const SemigroupOracle& semigroup, std::size_t n,
                                       double t_small, double bump_width) {
  if (n < 17) throw std::invalid_argument("extract_coefficients needs n >= 17");
  const double h = 1.0 / static_cast<double>(n - 1);
  const std::size_t lo = 4;
  const std::size_t hi = n - 4;  // exclusive

  const GridFunction gamma = estimate_A(semigroup, sample(CoefficientField::constant(1.0), n),
                                        t_small);

  // Direct path: localized triples, one per probe node.
  std::vector<double> alpha(n, 0.0), beta(n, 0.0);
  std::vector<double> alpha_alt(n, 0.0), beta_alt(n, 0.0);
  for (std::size_t i = lo; i < hi; ++i) {
    const TestTriple triple = build_test_functions(i * h, n, bump_width);
    alpha[i] = estimate_A(semigroup, triple.a_fn, t_small)[i];
    beta[i] = estimate_A(semigroup, triple.b_fn, t_small)[i];
  }

  // 2x2-solve path on two fixed global test functions with unit Wronskian
  // d = phi' psi'' - psi' phi''.
  const GridFunction phi_g = sample(CoefficientField::polynomial({-0.5, 1.0}), n);
  const GridFunction psi_g = sample(CoefficientField::polynomial({0.125, -0.5, 0.5}), n);
  const GridFunction a_phi = estimate_A(semigroup, phi_g, t_small);
  const GridFunction a_psi = estimate_A(semigroup, psi_g, t_small);
  const GridFunction dphi = derivative(phi_g);
  const GridFunction ddphi = derivative(dphi);
  const GridFunction dpsi = derivative(psi_g);
  const GridFunction ddpsi = derivative(dpsi);
  double residual = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double d = dphi[i] * ddpsi[i] - dpsi[i] * ddphi[i];
    if (std::abs(d) < 1e-6) {
      throw std::runtime_error("test-function pair ill-conditioned at x=" +
                               std::to_string(i * h));
    }
    const double rphi = a_phi[i] - phi_g[i] * gamma[i];
    const double rpsi = a_psi[i] - psi_g[i] * gamma[i];
    beta_alt[i] = (rphi * ddpsi[i] - rpsi * ddphi[i]) / d;
    alpha_alt[i] = (rpsi * dphi[i] - rphi * dpsi[i]) / d;
    residual = std::max(residual, std::abs(alpha[i] - alpha_alt[i]));
    residual = std::max(residual, std::abs(beta[i] - beta_alt[i]));
  }

  // Endpoint limits from the one-sided double-zero profiles.
  alpha[0] = estimate_A(semigroup, build_test_functions(0.0, n, bump_width).a_fn, t_small)[0];
  alpha[n - 1] =
      estimate_A(semigroup, build_test_functions(1.0, n, bump_width).a_fn, t_small)[n - 1];

  // Fill the unprobed margin: alpha bridges linearly to its endpoint limits,
  // beta extends its nearest probe (no endpoint construction exists for it).
  for (std::size_t i = 1; i < lo; ++i) {
    const double w = static_cast<double>(i) / static_cast<double>(lo);
    alpha[i] = (1.0 - w) * alpha[0] + w * alpha[lo];
    beta[i] = beta[lo];
  }
  beta[0] = beta[lo];
  for (std::size_t i = hi; i + 1 < n; ++i) {
    const double w = static_cast<double>(n - 1 - i) / static_cast<double>(n - hi);
    alpha[i] = (1.0 - w) * alpha[n - 1] + w * alpha[hi - 1];
    beta[i] = beta[hi - 1];
  }
  beta[n - 1] = beta[hi - 1];

  GeneratorEstimate est{GridFunction(std::move(alpha)), GridFunction(std::move(beta)),
                        gamma, t_small, residual, lo, hi};
  return est;
}

double lambda_degeneracy_scan(double xi, const GridFunction& psi,
                              std::span<const double> lambdas, Tolerance tol,
                              double exclusion_radius, double bump_width) {
  const std::size_t n = psi.size();
  const double h = psi.h();
  const auto ix = static_cast<std::size_t>(std::lround(xi * static_cast<double>(n - 1)));

  const GridFunction dpsi = derivative(psi);
  const GridFunction ddpsi = derivative(dpsi);
  const double pre_tol = 1e-4 * std::max(1.0, psi.sup_norm());
  if (std::abs(psi[ix]) > pre_tol || std::abs(dpsi[ix]) > pre_tol ||
      std::abs(ddpsi[ix]) > pre_tol) {
    throw std::invalid_argument("psi must carry a triple zero at xi=" + std::to_string(xi));
  }

  const TestTriple triple = build_test_functions(xi, n, bump_width);
  const auto k_ex = static_cast<std::size_t>(
      std::max(1L, std::lround(exclusion_radius / h)));

  std::size_t degenerate = 0;
  std::vector<double> combined(n);
  for (double lambda : lambdas) {
    for (std::size_t i = 0; i < n; ++i) combined[i] = triple.a_fn[i] + lambda * psi[i];
    bool ok = true;
    if (ix > k_ex) {
      const std::size_t len = ix - k_ex + 1;
      if (len >= 3) ok = is_nondegenerate(std::span<const double>(combined.data(), len), tol);
    }
    if (ok && ix + k_ex < n - 1) {
      const std::size_t start = ix + k_ex;
      ok = is_nondegenerate(std::span<const double>(combined.data() + start, n - start), tol);
    }
    if (!ok) ++degenerate;
  }
  return lambdas.empty() ? 0.0
                         : static_cast<double>(degenerate) / static_cast<double>(lambdas.size());
}

}  // namespace zeroflow
