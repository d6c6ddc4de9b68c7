#include "zeroflow/delay.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zeroflow {

History::History(std::vector<double> v, double span) : values(std::move(v)), r(span) {
  if (values.size() < 2) throw std::invalid_argument("History needs at least 2 samples");
  if (!(r > 0.0)) throw std::invalid_argument("History needs r > 0");
  for (double x : values) {
    if (!std::isfinite(x)) throw std::invalid_argument("History sample is non-finite");
  }
}

double History::sup_norm() const {
  double s = 0.0;
  for (double x : values) s = std::max(s, std::abs(x));
  return s;
}

double History::value_at_linear(double theta) const {
  const double s = std::clamp((theta + r) / dt(), 0.0, static_cast<double>(m()));
  const auto j = static_cast<std::size_t>(std::min(std::floor(s), static_cast<double>(m() - 1)));
  const double t = s - static_cast<double>(j);
  return (1.0 - t) * values[j] + t * values[j + 1];
}

double History::value_at(double theta) const {
  const std::size_t n = values.size();
  if (n < 4) return value_at_linear(theta);
  const double s = std::clamp((theta + r) / dt(), 0.0, static_cast<double>(m()));
  const auto cell = static_cast<std::ptrdiff_t>(std::floor(s));
  const auto lo = std::clamp<std::ptrdiff_t>(cell - 1, 0, static_cast<std::ptrdiff_t>(n) - 4);
  const double t = s - static_cast<double>(lo);
  const double l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
  const double l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
  const double l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
  const double l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
  const auto j = static_cast<std::size_t>(lo);
  return l0 * values[j] + l1 * values[j + 1] + l2 * values[j + 2] + l3 * values[j + 3];
}

DelayProblem DelayProblem::linear(double p, double q) {
  return DelayProblem(Storage{Linear{p, q}});
}

DelayProblem DelayProblem::general(std::function<double(double, double)> h, FeedbackSign sign) {
  if (!h) throw std::invalid_argument("general delay rhs must be callable");
  // Spot-check the declared monotone feedback sign on a small grid.
  const double pts[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  const double dv = 1e-6;
  for (double u : pts) {
    for (double v : pts) {
      const double slope = (h(u, v + dv) - h(u, v - dv)) / (2.0 * dv);
      if (sign == FeedbackSign::negative ? slope >= 0.0 : slope <= 0.0) {
        throw std::invalid_argument("declared feedback sign contradicted at (u,v)=(" +
                                    std::to_string(u) + "," + std::to_string(v) + ")");
      }
    }
  }
  return DelayProblem(Storage{General{std::move(h), sign}});
}

double DelayProblem::rhs(double u, double v) const {
  if (const auto* lin = std::get_if<Linear>(&storage_)) return -lin->p * v + lin->q * u;
  return std::get<General>(storage_).h(u, v);
}

double DelayProblem::p() const { return std::get<Linear>(storage_).p; }
double DelayProblem::q() const { return std::get<Linear>(storage_).q; }

FeedbackSign DelayProblem::feedback() const {
  if (const auto* lin = std::get_if<Linear>(&storage_)) {
    return lin->p >= 0.0 ? FeedbackSign::negative : FeedbackSign::positive;
  }
  return std::get<General>(storage_).sign;
}

namespace {

// Ring buffer over the trailing m+1 values; head is the oldest (theta = -r).
struct Window {
  std::vector<double> buf;
  std::size_t head = 0;

  explicit Window(const History& h) : buf(h.values) {}

  std::size_t len() const { return buf.size(); }
  double at(std::size_t offset) const { return buf[(head + offset) % len()]; }

  double heun_step(const DelayProblem& problem, double dt, double t) {
    const double x_now = at(len() - 1);
    const double x_delay0 = at(0);  // x(t - r), exact grid read
    const double x_delay1 = at(1);  // x(t + dt - r), exact grid read
    const double k1 = problem.rhs(x_now, x_delay0);
    const double pred = x_now + dt * k1;
    const double k2 = problem.rhs(pred, x_delay1);
    const double x_next = x_now + 0.5 * dt * (k1 + k2);
    if (!std::isfinite(x_next)) {
      throw std::runtime_error("delay rhs produced non-finite state at t=" + std::to_string(t));
    }
    buf[head] = x_next;  // overwrite the sample leaving the window
    head = (head + 1) % len();
    return x_next;
  }

  std::vector<double> ordered() const {
    std::vector<double> out(len());
    for (std::size_t j = 0; j < len(); ++j) out[j] = at(j);
    return out;
  }
};

}  // namespace

History advance(const History& hist, const DelayProblem& problem, long steps) {
  if (steps < 1) throw std::invalid_argument("advance needs steps >= 1");
  Window w(hist);
  const double dt = hist.dt();
  for (long k = 0; k < steps; ++k) w.heun_step(problem, dt, k * dt);
  return History(w.ordered(), hist.r);
}

Trajectory simulate(const DelayProblem& problem, const History& phi0, double T,
                    int record_every, Tolerance tol, bool store_snapshots) {
  if (!(T > 0.0)) throw std::invalid_argument("simulate needs T > 0");
  if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");
  const double dt = phi0.dt();
  const long steps = std::lround(T / dt);
  if (steps < 1) throw std::invalid_argument("T shorter than one step");

  Trajectory traj;
  traj.snapshot_span = phi0.r;
  traj.record(0.0, phi0.values, tol, store_snapshots);

  Window w(phi0);
  std::vector<double> scratch;
  for (long k = 1; k <= steps; ++k) {
    w.heun_step(problem, dt, (k - 1) * dt);
    if (k % record_every == 0 || k == steps) {
      scratch = w.ordered();
      traj.record(k * dt, scratch, tol, store_snapshots);
    }
  }
  return traj;
}

}  // namespace zeroflow
