#pragma once

#include <functional>
#include <optional>

#include "zeroflow/grid.hpp"
#include "zeroflow/trajectory.hpp"
#include "zeroflow/tridiagonal.hpp"

namespace zeroflow {

/// Boundary data for u' + couplings at both ends. Neumann is the all-zero
/// case of the non-separated form.
struct BoundarySpec {
  double d00 = 0.0, d01 = 0.0, d10 = 0.0, d11 = 0.0;

  static BoundarySpec neumann() { return {}; }
  static BoundarySpec non_separated(double d00, double d01, double d10, double d11) {
    return {d00, d01, d10, d11};
  }

  bool is_neumann() const { return d00 == 0.0 && d01 == 0.0 && d10 == 0.0 && d11 == 0.0; }

  /// Sign regime under which the odd functional decays (derived classifier,
  /// not enforced anywhere).
  bool v_minus_regime() const { return d01 < 0.0 && d10 > 0.0; }
};

struct ParabolicProblem {
  CoefficientField a = CoefficientField::constant(1.0);  // diffusion, > 0
  CoefficientField b = CoefficientField::constant(0.0);  // drift
  CoefficientField c = CoefficientField::constant(0.0);  // potential
  BoundarySpec bc;

  /// a(x) >= 0 tolerated when set; a strictly positive is required otherwise.
  bool allow_degenerate_diffusion = false;

  /// Optional late-time coefficient pair; the effective field at time t is
  /// field + min(t/blend_time, 1) * (late - field). blend_time == 0 means
  /// autonomous.
  std::optional<CoefficientField> b_late;
  std::optional<CoefficientField> c_late;
  double blend_time = 0.0;

  bool time_dependent() const { return blend_time > 0.0 && (b_late || c_late); }
};

/// One assembled implicit Euler step (I - dt*L) u+ = u with upwinded drift.
/// Neumann problems get mirror-image boundary rows (tridiagonal M-matrix);
/// non-separated problems get one-sided constraint rows plus corner
/// couplings, solved by bordering the last unknown on the tridiagonal core.
class ParabolicOperator {
 public:
  std::size_t size() const { return n_; }
  double dt() const { return dt_; }
  bool degenerate_diffusion() const { return degenerate_diffusion_; }

  /// Dense accessor into the assembled matrix (structure and sign checks).
  double entry(std::size_t i, std::size_t j) const;

  std::vector<double> apply_step(std::span<const double> u) const;

 private:
  friend ParabolicOperator assemble(const ParabolicProblem&, std::size_t, double, double);

  std::size_t n_ = 0;
  double dt_ = 0.0;
  bool neumann_ = true;
  bool degenerate_diffusion_ = false;

  // Raw assembled rows (pre-reduction), for entry().
  std::vector<double> lower_, diag_, upper_;
  double extra_top_ = 0.0;     // (0, 2)
  double extra_bottom_ = 0.0;  // (n-1, n-3)
  double corner_top_ = 0.0;    // (0, n-1)
  double corner_bottom_ = 0.0; // (n-1, 0)

  // Factored form.
  TridiagonalSolver core_;          // full system (Neumann) or leading block
  double mu_top_ = 0.0;             // row-reduction multipliers for the extras
  double mu_bottom_ = 0.0;
  std::vector<double> border_q_;    // B^{-1} f for the bordered column
  double border_g0_ = 0.0;          // reduced last-row entries
  double border_gn2_ = 0.0;
  double border_d_ = 0.0;
  double border_denom_ = 0.0;       // d - g . q
};

/// Builds (I - dt*L) at time t_now. Throws on dt*max(c) >= 1, nonpositive
/// diffusion in strict mode, or a singular reduced system.
ParabolicOperator assemble(const ParabolicProblem& problem, std::size_t n, double dt,
                           double t_now = 0.0);

/// Deterministic direct solve of the assembled system.
GridFunction step(const GridFunction& state, const ParabolicOperator& op);

Trajectory simulate(const ParabolicProblem& problem, const GridFunction& u0, double T,
                    double dt, int record_every = 1, Tolerance tol = {},
                    bool store_snapshots = false);

/// Step oracle T(t) built on the implicit stepper with a fixed substep
/// count, for generator probing.
std::function<GridFunction(const GridFunction&, double)> make_parabolic_semigroup(
    const ParabolicProblem& problem, std::size_t n, int substeps = 8);

}  // namespace zeroflow
