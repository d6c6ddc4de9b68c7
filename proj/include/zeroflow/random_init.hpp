#pragma once

#include <cstdint>
#include <random>

#include "zeroflow/delay.hpp"
#include "zeroflow/grid.hpp"
#include "zeroflow/parabolic.hpp"

namespace zeroflow {

/// Deterministic uniform stream. The engine is the standardized mt19937_64;
/// raw words are mapped to doubles directly (no distribution adapters, whose
/// output is implementation-defined) so identical seeds give identical draws
/// everywhere.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Truncated random cosine series (Neumann-compatible); non-Neumann boundary
/// specs get a mixed cosine/sine basis since no fixed basis satisfies the
/// coupled conditions.
GridFunction random_fourier(std::uint64_t seed, int k_max, std::size_t n,
                            const BoundarySpec& bc = BoundarySpec::neumann());

/// Random trigonometric history on [-r, 0] with m+1 samples.
History random_history(std::uint64_t seed, int modes, double r, std::size_t m);

}  // namespace zeroflow
