#include "zeroflow/tridiagonal.hpp"

#include <cmath>
#include <stdexcept>

namespace zeroflow {

TridiagonalSolver::TridiagonalSolver(std::vector<double> lower, std::vector<double> diag,
                                     std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)), diag_(std::move(diag)) {
  const std::size_t n = diag_.size();
  if (lower_.size() != n || upper_.size() != n || n == 0) {
    throw std::invalid_argument("tridiagonal bands must share a nonzero length");
  }
  inv_pivot_.resize(n);
  // Forward elimination: row i gets lower_[i] replaced by the multiplier
  // m_i = lower_[i] / d'_{i-1} and d'_i = diag - m_i * upper_{i-1}.
  double d = diag_[0];
  if (d == 0.0 || !std::isfinite(d)) throw std::runtime_error("tridiagonal zero pivot at row 0");
  inv_pivot_[0] = 1.0 / d;
  for (std::size_t i = 1; i < n; ++i) {
    const double m = lower_[i] * inv_pivot_[i - 1];
    lower_[i] = m;
    d = diag_[i] - m * upper_[i - 1];
    if (d == 0.0 || !std::isfinite(d)) {
      throw std::runtime_error("tridiagonal zero pivot at row " + std::to_string(i));
    }
    inv_pivot_[i] = 1.0 / d;
  }
}

std::vector<double> TridiagonalSolver::solve(std::span<const double> rhs) const {
  const std::size_t n = diag_.size();
  if (rhs.size() != n) throw std::invalid_argument("rhs size mismatch in tridiagonal solve");
  std::vector<double> x(rhs.begin(), rhs.end());
  for (std::size_t i = 1; i < n; ++i) x[i] -= lower_[i] * x[i - 1];
  x[n - 1] *= inv_pivot_[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (x[i] - upper_[i] * x[i + 1]) * inv_pivot_[i];
  return x;
}

}  // namespace zeroflow
