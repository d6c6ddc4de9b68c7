#include "zeroflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace zeroflow {

namespace {

void require_finite(double v, double x, const char* what) {
  if (!std::isfinite(v)) {
    throw std::runtime_error(std::string(what) + " is non-finite at x=" + std::to_string(x));
  }
}

double parse_number_with_pi(const std::string& tok) {
  // Accept plain numbers plus "pi", "2pi", "0.5pi".
  auto pos = tok.find("pi");
  if (pos == std::string::npos) return std::stod(tok);
  double factor = 1.0;
  if (pos > 0) factor = std::stod(tok.substr(0, pos));
  return factor * std::numbers::pi;
}

}  // namespace

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 3) {
    throw std::invalid_argument("GridFunction needs at least 3 samples, got " +
                                std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw std::invalid_argument("GridFunction sample " + std::to_string(i) + " is non-finite");
    }
  }
}

GridFunction GridFunction::zeros(std::size_t n) {
  return GridFunction(std::vector<double>(n, 0.0));
}

double GridFunction::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::value_at(double x) const {
  const std::size_t n = values_.size();
  const double step = h();
  const double s = std::clamp(x, 0.0, 1.0) / step;
  if (n == 3) {
    // Quadratic through the three samples.
    const double t = s;
    const double l0 = 0.5 * (t - 1.0) * (t - 2.0);
    const double l1 = -t * (t - 2.0);
    const double l2 = 0.5 * t * (t - 1.0);
    return l0 * values_[0] + l1 * values_[1] + l2 * values_[2];
  }
  std::size_t i0 = 0;
  const auto cell = static_cast<std::ptrdiff_t>(std::floor(s));
  const auto lo = std::clamp<std::ptrdiff_t>(cell - 1, 0, static_cast<std::ptrdiff_t>(n) - 4);
  i0 = static_cast<std::size_t>(lo);
  const double t = s - static_cast<double>(i0);
  // 4-point Lagrange on nodes i0..i0+3 with local coordinates 0..3.
  const double l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
  const double l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
  const double l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
  const double l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
  return l0 * values_[i0] + l1 * values_[i0 + 1] + l2 * values_[i0 + 2] + l3 * values_[i0 + 3];
}

bool GridFunction::operator==(const GridFunction& other) const {
  return values_ == other.values_;
}

void GridFunction::write_csv(std::ostream& os) const {
  os << "x,value\n";
  char buf[64];
  for (std::size_t i = 0; i < values_.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", x(i), values_[i]);
    os << buf;
  }
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) throw std::invalid_argument("GridFunction size mismatch");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return GridFunction(std::move(out));
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) throw std::invalid_argument("GridFunction size mismatch");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return GridFunction(std::move(out));
}

GridFunction operator*(double s, const GridFunction& a) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return GridFunction(std::move(out));
}

CoefficientField CoefficientField::constant(double v) { return CoefficientField(Storage{Constant{v}}); }
CoefficientField CoefficientField::sampled(GridFunction g) { return CoefficientField(Storage{Sampled{std::move(g)}}); }
CoefficientField CoefficientField::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  return CoefficientField(Storage{Polynomial{std::move(coeffs)}});
}
CoefficientField CoefficientField::sinusoid(double amp, double freq, double offset) {
  return CoefficientField(Storage{Sinusoid{amp, freq, offset}});
}

CoefficientField CoefficientField::parse(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  const std::string kind = descriptor.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : descriptor.substr(colon + 1);
  std::vector<std::string> toks;
  std::stringstream ss(rest);
  std::string tok;
  while (std::getline(ss, tok, ',')) toks.push_back(tok);
  if (kind == "const") {
    if (toks.size() != 1) throw std::invalid_argument("const field wants one value: " + descriptor);
    return constant(parse_number_with_pi(toks[0]));
  }
  if (kind == "poly") {
    if (toks.empty()) throw std::invalid_argument("poly field wants coefficients: " + descriptor);
    std::vector<double> c;
    for (const auto& t : toks) c.push_back(parse_number_with_pi(t));
    return polynomial(std::move(c));
  }
  if (kind == "sin") {
    if (toks.size() != 3) throw std::invalid_argument("sin field wants amp,freq,offset: " + descriptor);
    return sinusoid(parse_number_with_pi(toks[0]), parse_number_with_pi(toks[1]),
                    parse_number_with_pi(toks[2]));
  }
  throw std::invalid_argument("unknown coefficient descriptor: " + descriptor);
}

double CoefficientField::operator()(double x) const {
  return std::visit(
      [x](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return s.v;
        } else if constexpr (std::is_same_v<T, Sampled>) {
          return s.g.value_at(x);
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          double acc = 0.0;
          for (auto it = s.c.rbegin(); it != s.c.rend(); ++it) acc = acc * x + *it;
          return acc;
        } else {
          return s.amp * std::sin(s.freq * x + s.offset);
        }
      },
      storage_);
}

std::string CoefficientField::describe() const {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        char buf[96];
        if constexpr (std::is_same_v<T, Constant>) {
          std::snprintf(buf, sizeof(buf), "const:%.17g", s.v);
          return buf;
        } else if constexpr (std::is_same_v<T, Sampled>) {
          return "sampled:" + std::to_string(s.g.size());
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          std::string out = "poly:";
          for (std::size_t i = 0; i < s.c.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%s%.17g", i ? "," : "", s.c[i]);
            out += buf;
          }
          return out;
        } else {
          std::snprintf(buf, sizeof(buf), "sin:%.17g,%.17g,%.17g", s.amp, s.freq, s.offset);
          return buf;
        }
      },
      storage_);
}

GridFunction sample(const CoefficientField& f, std::size_t n) {
  if (n < 3) throw std::invalid_argument("sample needs n >= 3");
  std::vector<double> out(n);
  const double h = 1.0 / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) * h;
    out[i] = f(x);
    require_finite(out[i], x, "coefficient field");
  }
  return GridFunction(std::move(out));
}

GridFunction derivative(const GridFunction& phi) {
  const std::size_t n = phi.size();
  const double h = phi.h();
  std::vector<double> out(n);
  out[0] = (-3.0 * phi[0] + 4.0 * phi[1] - phi[2]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (phi[i + 1] - phi[i - 1]) / (2.0 * h);
  out[n - 1] = (3.0 * phi[n - 1] - 4.0 * phi[n - 2] + phi[n - 3]) / (2.0 * h);
  return GridFunction(std::move(out));
}

double simpson(const std::function<double(double)>& f, double lo, double hi, int n_quad) {
  if (n_quad < 2 || n_quad % 2 != 0) {
    throw std::invalid_argument("simpson needs a positive even interval count");
  }
  if (lo == hi) return 0.0;
  if (lo > hi) return -simpson(f, hi, lo, n_quad);
  const double h = (hi - lo) / n_quad;
  double acc = 0.0;
  for (int i = 0; i <= n_quad; ++i) {
    const double x = (i == n_quad) ? hi : lo + i * h;
    const double v = f(x);
    require_finite(v, x, "integrand");
    const double w = (i == 0 || i == n_quad) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += w * v;
  }
  return acc * h / 3.0;
}

double integrate(const CoefficientField& f, double lo, double hi, int n_quad) {
  if (lo < 0.0 || lo > 1.0 || hi < 0.0 || hi > 1.0) {
    throw std::invalid_argument("integrate bounds must lie in [0,1]");
  }
  return simpson([&f](double x) { return f(x); }, lo, hi, n_quad);
}

}  // namespace zeroflow
