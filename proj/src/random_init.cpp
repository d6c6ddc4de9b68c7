#include "zeroflow/random_init.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zeroflow {

GridFunction random_fourier(std::uint64_t seed, int k_max, std::size_t n,
                            const BoundarySpec& bc) {
  if (k_max < 1) throw std::invalid_argument("random_fourier needs k_max >= 1");
  SeededRng rng(seed);
  std::vector<double> cos_c(static_cast<std::size_t>(k_max) + 1);
  std::vector<double> sin_c(static_cast<std::size_t>(k_max) + 1, 0.0);
  cos_c[0] = 0.5 * rng.uniform(-1.0, 1.0);
  for (int k = 1; k <= k_max; ++k) cos_c[static_cast<std::size_t>(k)] = rng.uniform(-1.0, 1.0);
  if (!bc.is_neumann()) {
    for (int k = 1; k <= k_max; ++k) sin_c[static_cast<std::size_t>(k)] = rng.uniform(-1.0, 1.0);
  }

  std::vector<double> out(n, 0.0);
  const double h = 1.0 / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) * h;
    double v = cos_c[0];
    for (int k = 1; k <= k_max; ++k) {
      const double arg = std::numbers::pi * static_cast<double>(k) * x;
      v += cos_c[static_cast<std::size_t>(k)] * std::cos(arg) +
           sin_c[static_cast<std::size_t>(k)] * std::sin(arg);
    }
    out[i] = v;
  }
  return GridFunction(std::move(out));
}

History random_history(std::uint64_t seed, int modes, double r, std::size_t m) {
  if (modes < 1) throw std::invalid_argument("random_history needs modes >= 1");
  if (m < 2) throw std::invalid_argument("random_history needs m >= 2");
  SeededRng rng(seed);
  std::vector<double> cos_c(static_cast<std::size_t>(modes) + 1);
  std::vector<double> sin_c(static_cast<std::size_t>(modes) + 1);
  cos_c[0] = 0.5 * rng.uniform(-1.0, 1.0);
  sin_c[0] = 0.0;
  for (int k = 1; k <= modes; ++k) {
    cos_c[static_cast<std::size_t>(k)] = rng.uniform(-1.0, 1.0);
    sin_c[static_cast<std::size_t>(k)] = rng.uniform(-1.0, 1.0);
  }
  std::vector<double> out(m + 1, 0.0);
  for (std::size_t j = 0; j <= m; ++j) {
    const double theta = -r + r * static_cast<double>(j) / static_cast<double>(m);
    double v = cos_c[0];
    for (int k = 1; k <= modes; ++k) {
      const double arg = std::numbers::pi * static_cast<double>(k) * theta / r;
      v += cos_c[static_cast<std::size_t>(k)] * std::cos(arg) +
           sin_c[static_cast<std::size_t>(k)] * std::sin(arg);
    }
    out[j] = v;
  }
  return History(std::move(out), r);
}

}  // namespace zeroflow
