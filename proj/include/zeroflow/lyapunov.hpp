#pragma once

#include <span>

#include "zeroflow/grid.hpp"

namespace zeroflow {

/// Relative threshold for treating a sample as zero: eps = eps_rel * sup|phi|.
/// Keeps the count invariant under scaling.
struct Tolerance {
  double eps_rel = 1e-9;
};

struct ZeroCount {
  int z = 0;
  bool degenerate = false;  // a near-zero plateau between equal-sign samples was collapsed
};

/// Strict sign changes of the sample sequence after discarding near-zero
/// entries. Returns z = 0 for the all-near-zero function.
ZeroCount zero_number(std::span<const double> values, Tolerance tol = {});
ZeroCount zero_number(const GridFunction& phi, Tolerance tol = {});

/// 2*floor(z/2) + 1; always odd.
int v_minus(std::span<const double> values, Tolerance tol = {});
int v_minus(const GridFunction& phi, Tolerance tol = {});

/// 2*floor((z+1)/2); always even.
int v_plus(std::span<const double> values, Tolerance tol = {});
int v_plus(const GridFunction& phi, Tolerance tol = {});

/// True iff every sign change is a sharp crossing (at most one near-zero
/// sample, bracketed by opposite signs) and no run of two or more samples
/// sits within eps of zero. With require_nonzero_boundary, additionally
/// demands |phi(0)| > eps and |phi(1)| > eps.
bool is_nondegenerate(std::span<const double> values, Tolerance tol = {},
                      bool require_nonzero_boundary = false);
bool is_nondegenerate(const GridFunction& phi, Tolerance tol = {},
                      bool require_nonzero_boundary = false);

}  // namespace zeroflow
