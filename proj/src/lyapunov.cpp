#include "zeroflow/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zeroflow {

namespace {

void check_tol(const Tolerance& tol) {
  if (!(tol.eps_rel > 0.0 && tol.eps_rel < 1.0)) {
    throw std::invalid_argument("Tolerance.eps_rel must lie in (0,1)");
  }
}

double sup_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

ZeroCount zero_number(std::span<const double> values, Tolerance tol) {
  check_tol(tol);
  const double sup = sup_abs(values);
  if (sup == 0.0) return {0, false};
  const double eps = tol.eps_rel * sup;

  ZeroCount out;
  int prev_sign = 0;
  bool pending_gap = false;  // discarded run since the last surviving sample
  for (double v : values) {
    if (std::abs(v) <= eps) {
      if (prev_sign != 0) pending_gap = true;
      continue;
    }
    const int s = v > 0.0 ? 1 : -1;
    if (prev_sign != 0) {
      if (s != prev_sign) {
        ++out.z;
      } else if (pending_gap) {
        out.degenerate = true;  // collapsed plateau between equal signs
      }
    }
    prev_sign = s;
    pending_gap = false;
  }
  return out;
}

ZeroCount zero_number(const GridFunction& phi, Tolerance tol) {
  return zero_number(phi.values(), tol);
}

int v_minus(std::span<const double> values, Tolerance tol) {
  return 2 * (zero_number(values, tol).z / 2) + 1;
}
int v_minus(const GridFunction& phi, Tolerance tol) { return v_minus(phi.values(), tol); }

int v_plus(std::span<const double> values, Tolerance tol) {
  return 2 * ((zero_number(values, tol).z + 1) / 2);
}
int v_plus(const GridFunction& phi, Tolerance tol) { return v_plus(phi.values(), tol); }

bool is_nondegenerate(std::span<const double> values, Tolerance tol,
                      bool require_nonzero_boundary) {
  check_tol(tol);
  const std::size_t n = values.size();
  const double sup = sup_abs(values);
  if (sup == 0.0) return false;
  const double eps = tol.eps_rel * sup;

  if (require_nonzero_boundary &&
      (std::abs(values[0]) <= eps || std::abs(values[n - 1]) <= eps)) {
    return false;
  }

  std::size_t i = 0;
  int prev_sign = 0;
  while (i < n) {
    if (std::abs(values[i]) > eps) {
      prev_sign = values[i] > 0.0 ? 1 : -1;
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && std::abs(values[j]) <= eps) ++j;
    if (j - i >= 2) return false;  // flat zero patch
    // Single near-zero sample: a touch between equal signs is degenerate,
    // a bracketed sign change is a sharp crossing. Runs touching the ends
    // are left unclassified here (boundary handling is the flag's job).
    if (prev_sign != 0 && j < n) {
      const int next_sign = values[j] > 0.0 ? 1 : -1;
      if (next_sign == prev_sign) return false;
    }
    i = j;
  }
  return true;
}

bool is_nondegenerate(const GridFunction& phi, Tolerance tol, bool require_nonzero_boundary) {
  return is_nondegenerate(phi.values(), tol, require_nonzero_boundary);
}

}  // namespace zeroflow
