#pragma once

#include <functional>
#include <span>

#include "zeroflow/grid.hpp"
#include "zeroflow/lyapunov.hpp"

namespace zeroflow {

/// Black-box step oracle: phi, t -> T(t) phi on the same grid.
using SemigroupOracle = std::function<GridFunction(const GridFunction&, double)>;

/// Localized probe functions at xi: a has a double zero with unit second
/// derivative and grows monotonically away from xi on (0,1); b has a simple
/// zero with unit slope; c is the constant one. All taper to flat ends so
/// Neumann semigroups accept them.
struct TestTriple {
  GridFunction a_fn;
  GridFunction b_fn;
  GridFunction c_fn;
  double xi = 0.0;
  std::size_t xi_index = 0;
  bool boundary_limited = false;  // xi on the boundary: b's unit-slope condition waived
};

/// width is the plateau span around xi where the profiles are exactly
/// polynomial; it is capped by the distance from xi to the boundary.
TestTriple build_test_functions(double xi, std::size_t n, double width = 0.2);

/// Extrapolated difference quotient (4 D(t/2) - D(t)) / 3 with
/// D(s) = (T(s) phi - phi) / s.
GridFunction estimate_A(const SemigroupOracle& semigroup, const GridFunction& phi,
                        double t_small);

struct GeneratorEstimate {
  GridFunction alpha;
  GridFunction beta;
  GridFunction gamma;
  double t_small = 0.0;
  double residual = 0.0;        // max gap between the two extraction paths on probes
  std::size_t probe_begin = 0;  // node band [probe_begin, probe_end) used for probing
  std::size_t probe_end = 0;

  bool alpha_nonnegative(double tol_alpha = 1e-3) const;
  void write_csv(std::ostream& os) const;  // header: x,alpha,beta,gamma
};

/// Recovers the generator coefficients from semigroup snapshots. gamma comes
/// from the constant function; alpha and beta per probe point both directly
/// from the localized triple and via the 2x2 solve on two fixed global test
/// functions, with the maximum discrepancy reported as the residual. alpha
/// at the endpoints comes from the one-sided double-zero construction.
GeneratorEstimate extract_coefficients(const SemigroupOracle& semigroup, std::size_t n,
                                       double t_small, double bump_width = 0.2);

/// Fraction of lambda values for which a + lambda*psi has a degenerate zero
/// away from xi (outside exclusion_radius). psi must carry a triple zero
/// at xi; violating that precondition throws.
double lambda_degeneracy_scan(double xi, const GridFunction& psi,
                              std::span<const double> lambdas, Tolerance tol = {},
                              double exclusion_radius = 0.05, double bump_width = 0.2);

}  // namespace zeroflow
