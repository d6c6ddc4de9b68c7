#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace zeroflow {

/// A real-valued function on [0,1] stored as uniform samples, x_i = i/(n-1).
/// Immutable after construction; operations return new instances.
class GridFunction {
 public:
  explicit GridFunction(std::vector<double> values);

  static GridFunction zeros(std::size_t n);

  std::size_t size() const { return values_.size(); }
  double h() const { return 1.0 / static_cast<double>(values_.size() - 1); }
  double x(std::size_t i) const { return static_cast<double>(i) * h(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  double sup_norm() const;

  /// Evaluate off-grid by local 4-point polynomial interpolation
  /// (3-point when n == 3). Exact at the nodes.
  double value_at(double x) const;

  /// Equal iff same n and identical samples.
  bool operator==(const GridFunction& other) const;

  void write_csv(std::ostream& os) const;  // header: x,value

 private:
  std::vector<double> values_;
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double s, const GridFunction& a);

/// Closed-form or sampled coefficient, evaluable anywhere on [0,1].
class CoefficientField {
 public:
  static CoefficientField constant(double v);
  static CoefficientField sampled(GridFunction g);
  static CoefficientField polynomial(std::vector<double> coeffs);  // sum c_k x^k
  static CoefficientField sinusoid(double amp, double freq, double offset);  // amp*sin(freq*x+offset)

  /// Parse a descriptor string: "const:v", "poly:c0,c1,...",
  /// "sin:amp,freq,offset" (freq may use "pi" multipliers, e.g. "2pi").
  static CoefficientField parse(const std::string& descriptor);

  double operator()(double x) const;

  std::string describe() const;

 private:
  struct Constant { double v; };
  struct Sampled { GridFunction g; };
  struct Polynomial { std::vector<double> c; };
  struct Sinusoid { double amp, freq, offset; };
  using Storage = std::variant<Constant, Sampled, Polynomial, Sinusoid>;

  explicit CoefficientField(Storage s) : storage_(std::move(s)) {}
  Storage storage_;
};

/// values_i = f(i/(n-1)); throws identifying x if f is non-finite there.
GridFunction sample(const CoefficientField& f, std::size_t n);

/// Central differences in the interior, second-order one-sided 3-point
/// stencils at the endpoints. Exact for quadratics.
GridFunction derivative(const GridFunction& phi);

/// Composite Simpson with n_quad (even) intervals. Antisymmetric under
/// swapping lo/hi. Throws if the integrand is non-finite.
double integrate(const CoefficientField& f, double lo, double hi, int n_quad = 512);

/// Simpson core on an arbitrary callable (no [0,1] domain restriction).
double simpson(const std::function<double(double)>& f, double lo, double hi, int n_quad);

}  // namespace zeroflow
