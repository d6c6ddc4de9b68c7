#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace zeroflow {

/// Thomas factorization of a tridiagonal system, reusable across solves.
/// No pivoting; the assembled operators here are strictly diagonally
/// dominant or row-reduced constraint systems with nonzero pivots.
class TridiagonalSolver {
 public:
  TridiagonalSolver() = default;

  /// lower[i] multiplies x[i-1] in row i (lower[0] unused); upper[i]
  /// multiplies x[i+1] (upper[n-1] unused). Throws on a zero pivot.
  TridiagonalSolver(std::vector<double> lower, std::vector<double> diag,
                    std::vector<double> upper);

  std::size_t size() const { return diag_.size(); }

  /// Solves A x = rhs using the stored factorization.
  std::vector<double> solve(std::span<const double> rhs) const;

 private:
  std::vector<double> lower_;
  std::vector<double> inv_pivot_;  // 1/d'_i of the forward elimination
  std::vector<double> upper_;
  std::vector<double> diag_;
};

}  // namespace zeroflow
