#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "zeroflow/grid.hpp"
#include "zeroflow/lyapunov.hpp"

using namespace zeroflow;

namespace {

// Independent oracle for the sign-change count: the longest chain of
// samples with strictly alternating signs, taken over all increasing index
// tuples (zero entries can never join a chain).
int brute_force_sign_changes(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<int> best(n, 0);
  int longest = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == 0.0) continue;
    best[i] = 1;
    for (std::size_t j = 0; j < i; ++j) {
      if (v[j] * v[i] < 0.0) best[i] = std::max(best[i], best[j] + 1);
    }
    longest = std::max(longest, best[i]);
  }
  return longest == 0 ? 0 : longest - 1;
}

GridFunction cos_mode(int k, std::size_t n) {
  return sample(CoefficientField::sinusoid(1.0, k * std::numbers::pi, std::numbers::pi / 2.0), n);
}

}  // namespace

TEST_CASE("zero_number on the worked examples") {
  CHECK(zero_number(cos_mode(3, 257)).z == 3);

  const GridFunction touch = sample(CoefficientField::polynomial({0.25, -1.0, 1.0}), 257);
  const ZeroCount zt = zero_number(touch);
  CHECK(zt.z == 0);
  CHECK(zt.degenerate);  // the grazing zero collapses between equal signs

  const std::vector<double> alt = {1.0, -1.0, 1.0, -1.0, 1.0};
  const ZeroCount za = zero_number(alt);
  CHECK(za.z == 4);
  CHECK(za.z == brute_force_sign_changes(alt));
  CHECK_FALSE(za.degenerate);
}

TEST_CASE("zero conventions") {
  const GridFunction zero = GridFunction::zeros(11);
  CHECK(zero_number(zero).z == 0);
  const std::vector<double> tiny = {1e-18, -1e-18, 1e-18};
  CHECK(zero_number(tiny).z == 0);  // all-near-zero collapses to zero count
  const std::vector<double> crossing = {1.0, 1e-15, -1.0};
  const ZeroCount zc = zero_number(crossing);
  CHECK(zc.z == 1);
  CHECK_FALSE(zc.degenerate);  // a bracketed sign change is a sharp crossing
  const std::vector<double> plateau = {1.0, 1e-15, 1e-15, 1.0};
  CHECK(zero_number(plateau).degenerate);
}

TEST_CASE("v_minus and v_plus parities") {
  CHECK(v_minus(sample(CoefficientField::constant(1.0), 9)) == 1);
  CHECK(v_minus(cos_mode(3, 257)) == 3);
  const std::vector<double> alt = {1.0, -1.0, 1.0, -1.0, 1.0};
  CHECK(v_minus(alt) == 5);

  CHECK(v_plus(sample(CoefficientField::constant(1.0), 9)) == 0);
  CHECK(v_plus(cos_mode(1, 257)) == 2);
  CHECK(v_plus(alt) == 4);
}

TEST_CASE("functional invariants under scaling and reflection") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(17);
    for (double& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    const int z = zero_number(v).z;
    std::vector<double> neg(v), scaled(v);
    for (double& x : neg) x = -x;
    for (double& x : scaled) x *= 37.5;
    CHECK(zero_number(neg).z == z);
    CHECK(zero_number(scaled).z == z);
    std::vector<double> shrunk(v);
    for (double& x : shrunk) x *= 1e-8;
    CHECK(zero_number(shrunk).z == z);

    const int vm = v_minus(v);
    const int vp = v_plus(v);
    CHECK(vm % 2 == 1);
    CHECK(vp % 2 == 0);
    CHECK(std::abs(vm - z) <= 1);
    CHECK(std::abs(vp - z) <= 1);
  }
}

TEST_CASE("v_minus and v_plus are nondecreasing in z") {
  auto pattern_with_z = [](int z) {
    std::vector<double> v;
    v.push_back(1.0);
    for (int k = 0; k < z; ++k) v.push_back(k % 2 == 0 ? -1.0 : 1.0);
    while (v.size() < 3) v.push_back(v.back());
    return v;
  };
  for (int z = 0; z < 9; ++z) {
    CHECK(v_minus(pattern_with_z(z + 1)) >= v_minus(pattern_with_z(z)));
    CHECK(v_plus(pattern_with_z(z + 1)) >= v_plus(pattern_with_z(z)));
  }
}

TEST_CASE("brute-force agreement on short sign patterns") {
  // Exhaustive over {-1,0,1}^n for small n; seeded random patterns beyond.
  for (std::size_t n = 3; n <= 7; ++n) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<double> v(n);
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = static_cast<double>(static_cast<int>(c % 3) - 1);
        c /= 3;
      }
      CAPTURE(code);
      CHECK(zero_number(v).z == brute_force_sign_changes(v));
    }
  }
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 8 + (rng() % 5);
    std::vector<double> v(n);
    for (double& x : v) x = static_cast<double>(static_cast<int>(rng() % 3) - 1);
    CHECK(zero_number(v).z == brute_force_sign_changes(v));
  }
}

TEST_CASE("refinement stability: the count settles once the grid resolves the modes") {
  for (int k = 1; k <= 4; ++k) {
    for (std::size_t n = 4 * static_cast<std::size_t>(k) + 1;
         n <= 4 * static_cast<std::size_t>(k) + 61; ++n) {
      CAPTURE(k);
      CAPTURE(n);
      CHECK(zero_number(cos_mode(k, n)).z == k);
    }
  }
}

TEST_CASE("is_nondegenerate classification") {
  CHECK(is_nondegenerate(cos_mode(3, 257)));
  const GridFunction touch = sample(CoefficientField::polynomial({0.25, -1.0, 1.0}), 257);
  CHECK_FALSE(is_nondegenerate(touch));
  const GridFunction bridge = sample(CoefficientField::polynomial({0.0, 1.0, -1.0}), 257);
  CHECK_FALSE(is_nondegenerate(bridge, {}, /*require_nonzero_boundary=*/true));
  CHECK(is_nondegenerate(bridge));  // without the boundary clause the interior is clean
  CHECK_FALSE(is_nondegenerate(GridFunction::zeros(9)));
  const std::vector<double> flat = {1.0, 0.0, 0.0, -1.0, 1.0};
  CHECK_FALSE(is_nondegenerate(flat));
}

TEST_CASE("tolerance validation") {
  const std::vector<double> v = {1.0, -1.0, 1.0};
  CHECK_THROWS(zero_number(v, Tolerance{0.0}));
  CHECK_THROWS(zero_number(v, Tolerance{1.5}));
}
