#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "zeroflow/grid.hpp"

using namespace zeroflow;

TEST_CASE("sample evaluates fields on the uniform grid") {
  const GridFunction c = sample(CoefficientField::constant(2.0), 3);
  CHECK(c[0] == 2.0);
  CHECK(c[1] == 2.0);
  CHECK(c[2] == 2.0);

  const GridFunction lin = sample(CoefficientField::polynomial({0.0, 1.0}), 5);
  CHECK(lin[0] == doctest::Approx(0.0));
  CHECK(lin[1] == doctest::Approx(0.25));
  CHECK(lin[2] == doctest::Approx(0.5));
  CHECK(lin[3] == doctest::Approx(0.75));
  CHECK(lin[4] == doctest::Approx(1.0));

  const GridFunction s = sample(CoefficientField::sinusoid(1.0, std::numbers::pi, 0.0), 3);
  CHECK(s[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(s[1] == doctest::Approx(1.0));
  CHECK(std::abs(s[2]) < 1e-15);
}

TEST_CASE("sample rejects bad input") {
  CHECK_THROWS(sample(CoefficientField::constant(1.0), 2));
  // Overflows to infinity near x = 1; the error names the sample point.
  const auto huge = CoefficientField::polynomial({0.0, 1e308, 1e308});
  CHECK_THROWS_WITH_AS(sample(huge, 5), doctest::Contains("x=1"), std::runtime_error);
}

TEST_CASE("derivative stencils are second order") {
  const GridFunction lin = sample(CoefficientField::polynomial({0.0, 1.0}), 101);
  const GridFunction dlin = derivative(lin);
  for (std::size_t i = 0; i < dlin.size(); ++i) CHECK(dlin[i] == doctest::Approx(1.0).epsilon(1e-12));

  const GridFunction quad = sample(CoefficientField::polynomial({0.0, 0.0, 1.0}), 101);
  const GridFunction dquad = derivative(quad);
  CHECK(dquad[50] == doctest::Approx(1.0).epsilon(1e-10));
  // One-sided endpoint stencils are exact on quadratics too.
  CHECK(dquad[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(dquad[100] == doctest::Approx(2.0).epsilon(1e-10));

  const GridFunction c = sample(CoefficientField::constant(4.2), 33);
  const GridFunction dc = derivative(c);
  for (std::size_t i = 0; i < dc.size(); ++i) CHECK(std::abs(dc[i]) < 1e-12);
}

TEST_CASE("derivative is linear") {
  const GridFunction f = sample(CoefficientField::sinusoid(1.0, 3.0, 0.2), 64);
  const GridFunction g = sample(CoefficientField::polynomial({0.1, -0.4, 2.0}), 64);
  const double alpha = -1.75;
  const GridFunction lhs = derivative(alpha * f + g);
  const GridFunction rhs = alpha * derivative(f) + derivative(g);
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    CHECK(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-12));
  }
}

TEST_CASE("integrate: Simpson values and antisymmetry") {
  CHECK(integrate(CoefficientField::constant(1.0), 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));

  // f(x) = 1/(1+x) has an elementary antiderivative.
  const GridFunction recip = sample(
      CoefficientField::polynomial({1.0}), 3);  // placeholder, real field below
  (void)recip;
  const auto inv1px = [](double x) { return 1.0 / (1.0 + x); };
  CHECK(simpson(inv1px, 0.0, 1.0, 256) == doctest::Approx(std::log(2.0)).epsilon(1e-8));

  const auto ident = CoefficientField::polynomial({0.0, 1.0});
  CHECK(integrate(ident, 0.2, 0.7) == doctest::Approx(0.225).epsilon(1e-15));

  const auto f = CoefficientField::sinusoid(0.7, 5.0, 0.3);
  const double ab = integrate(f, 0.1, 0.9);
  const double ba = integrate(f, 0.9, 0.1);
  CHECK(ab == -ba);  // exact: the swapped call reuses the same summation

  CHECK_THROWS(integrate(f, 0.0, 1.0, 255));   // odd interval count
  CHECK_THROWS(integrate(f, -0.1, 0.5, 256));  // out of domain
}

TEST_CASE("GridFunction equality requires matching size") {
  const GridFunction a = sample(CoefficientField::constant(1.0), 5);
  const GridFunction b = sample(CoefficientField::constant(1.0), 7);
  const GridFunction c = sample(CoefficientField::constant(1.0), 5);
  CHECK(a == c);
  CHECK_FALSE(a == b);
}

TEST_CASE("value_at interpolation is exact at nodes and fourth order between") {
  const GridFunction f = sample(CoefficientField::sinusoid(1.0, 6.0, 0.1), 129);
  for (std::size_t i = 0; i < f.size(); i += 16) CHECK(f.value_at(f.x(i)) == f[i]);
  double worst = 0.0;
  for (int k = 0; k < 400; ++k) {
    const double x = (k + 0.5) / 400.0;
    worst = std::max(worst, std::abs(f.value_at(x) - std::sin(6.0 * x + 0.1)));
  }
  CHECK(worst < 2e-7);
}

TEST_CASE("CSV emits the x,value schema") {
  const GridFunction f = sample(CoefficientField::constant(3.0), 3);
  std::ostringstream os;
  f.write_csv(os);
  CHECK(os.str() == "x,value\n0,3\n0.5,3\n1,3\n");
}

TEST_CASE("descriptor parsing") {
  CHECK(CoefficientField::parse("const:2.5")(0.3) == doctest::Approx(2.5));
  CHECK(CoefficientField::parse("poly:1,0,1")(0.5) == doctest::Approx(1.25));
  CHECK(CoefficientField::parse("sin:1,pi,0")(0.5) == doctest::Approx(1.0));
  CHECK(CoefficientField::parse("sin:0.5,2pi,0")(0.25) == doctest::Approx(0.5));
  CHECK_THROWS(CoefficientField::parse("spline:1,2"));
}
