#pragma once

#include <functional>
#include <variant>

#include "zeroflow/trajectory.hpp"

namespace zeroflow {

/// State of a delay semiflow: uniform samples of x on [-r, 0].
struct History {
  std::vector<double> values;  // m+1 samples, values[j] = x(-r + j*dt)
  double r = 1.0;

  History(std::vector<double> v, double span);

  std::size_t m() const { return values.size() - 1; }
  double dt() const { return r / static_cast<double>(m()); }
  double theta(std::size_t j) const { return -r + static_cast<double>(j) * dt(); }

  double sup_norm() const;

  /// Linear interpolation at theta in [-r, 0].
  double value_at_linear(double theta) const;
  /// Local cubic interpolation (used where fourth-order accuracy matters).
  double value_at(double theta) const;
};

enum class FeedbackSign { negative, positive };

/// Scalar delay rhs xdot(t) = h(x(t), x(t-r)). The linear case is
/// xdot = -p x(t-r) + q x(t).
class DelayProblem {
 public:
  static DelayProblem linear(double p, double q);

  /// General rhs must declare its feedback sign; the declaration is
  /// spot-checked by finite differences on a small (u,v) grid.
  static DelayProblem general(std::function<double(double, double)> h, FeedbackSign sign);

  double rhs(double u, double v) const;
  bool is_linear() const { return std::holds_alternative<Linear>(storage_); }
  double p() const;
  double q() const;
  FeedbackSign feedback() const;

 private:
  struct Linear { double p, q; };
  struct General { std::function<double(double, double)> h; FeedbackSign sign; };
  using Storage = std::variant<Linear, General>;
  explicit DelayProblem(Storage s) : storage_(std::move(s)) {}
  Storage storage_;
};

/// Heun (explicit trapezoidal) stepping with dt = r/m. Delayed values at
/// both stages are exact grid reads; off-grid stage times would fall back
/// to linear interpolation. Returns the trailing window of length r.
History advance(const History& hist, const DelayProblem& problem, long steps);

/// Records the history window x_t at the requested cadence.
Trajectory simulate(const DelayProblem& problem, const History& phi0, double T,
                    int record_every = 1, Tolerance tol = {}, bool store_snapshots = false);

}  // namespace zeroflow
