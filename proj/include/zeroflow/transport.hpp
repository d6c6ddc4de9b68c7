#pragma once

#include <functional>
#include <iosfwd>

#include "zeroflow/delay.hpp"
#include "zeroflow/grid.hpp"
#include "zeroflow/trajectory.hpp"

namespace zeroflow {

/// First-order problem u_t = b(x) u_x + c(x) u with b > 0 and the boundary
/// functional a_coef*phi(0) + alpha_tilde*phi(1) driving the trace at x = 1.
struct TransportProblem {
  CoefficientField b = CoefficientField::constant(1.0);
  CoefficientField c = CoefficientField::constant(0.0);
  double a_coef = 0.0;
  double alpha_tilde = 0.0;

  /// Regime classifier for the odd functional (recorded, not enforced).
  bool v_minus_regime() const { return a_coef <= 0.0; }
};

/// Precomputed travel-time coordinates for b > 0: theta(xi) = -int_xi^1 ds/b
/// and its monotone inverse, with r = theta-span of the full interval.
class CharacteristicMap {
 public:
  static CharacteristicMap build(const CoefficientField& b, std::size_t n);

  double r() const { return r_; }
  std::size_t size() const { return n_; }
  const CoefficientField& b() const { return b_; }

  /// Continuous evaluation by cumulative quadrature; theta(1) = 0 and
  /// theta(0) = -r exactly by construction.
  double theta(double xi) const;

  /// Monotone inversion: bisection-bracketed Newton on the cumulative
  /// table, to |theta(xi) - theta| <= 1e-12.
  double xi(double theta) const;

  std::span<const double> theta_table() const { return theta_table_; }  // at grid xi_i
  std::span<const double> xi_table() const { return xi_table_; }        // at uniform theta_j

  void write_csv(std::ostream& os) const;  // header: xi,theta

 private:
  CharacteristicMap() = default;

  CoefficientField b_ = CoefficientField::constant(1.0);
  std::size_t n_ = 0;
  double r_ = 0.0;
  std::vector<double> suffix_;       // int_{xi_i}^1 ds/b
  std::vector<double> theta_table_;  // -suffix_
  std::vector<double> xi_table_;
  double inv_b_partial(double from, double to) const;
};

/// (h psi)(xi) = psi(theta(xi)) * exp(int_xi^1 c/b): boundary-trace history
/// to spatial profile.
GridFunction apply_h(const History& psi, const TransportProblem& problem,
                     const CharacteristicMap& cmap);

/// Inverse weighting; defaults to the map grid's resolution (m = n-1).
History apply_h_inv(const GridFunction& phi, const TransportProblem& problem,
                    const CharacteristicMap& cmap, std::size_t m = 0);

/// Characteristics-only solution, valid while the backward foot stays in
/// [0,1] (throws a region error otherwise).
double interior_solution(const GridFunction& phi0, double x, double t,
                         const TransportProblem& problem, const CharacteristicMap& cmap);

/// Full semiflow: boundary trace advanced by the Heun delay stepper with
/// delayed lookups through the two weighted endpoint reads of h, snapshots
/// reconstructed on the map grid at record times.
Trajectory evolve(const TransportProblem& problem, const GridFunction& phi0, double T,
                  double dt, const CharacteristicMap& cmap, int record_every = 1,
                  Tolerance tol = {}, bool store_snapshots = false);

/// z(psi) == z(h psi): exact integer equality expected.
bool zero_conjugacy_check(const History& psi, const TransportProblem& problem,
                          const CharacteristicMap& cmap, Tolerance tol = {});

/// Step oracle T(t) for generator probing; valid for t < r.
std::function<GridFunction(const GridFunction&, double)> make_transport_semigroup(
    const TransportProblem& problem, const CharacteristicMap& cmap);

}  // namespace zeroflow
