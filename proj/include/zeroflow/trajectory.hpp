#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "zeroflow/lyapunov.hpp"

namespace zeroflow {

/// Time-stamped record of a run: the integer functionals, sup-norms and
/// degeneracy mask per snapshot, plus the snapshots themselves on request.
struct Trajectory {
  std::vector<double> times;
  std::vector<int> z_series;
  std::vector<int> v_minus_series;
  std::vector<int> v_plus_series;
  std::vector<double> sup_norms;
  std::vector<std::uint8_t> degenerate_mask;
  std::vector<std::vector<double>> snapshots;  // empty unless recording was asked for
  double snapshot_span = 1.0;  // snapshots live on [0,1] (=1) or [-span,0] for histories

  std::size_t size() const { return times.size(); }

  void record(double t, std::span<const double> state, Tolerance tol, bool store_snapshot);

  /// Exact header: t,z,v_minus,v_plus,sup_norm,degenerate
  void write_csv(std::ostream& os) const;

  /// Boundary trace (last sample of each stored snapshot); requires snapshots.
  std::vector<double> trace_last() const;
};

/// Parse a trajectory CSV produced by write_csv (snapshots are not stored).
Trajectory read_trajectory_csv(std::istream& is);

enum class Functional { z, v_minus, v_plus };

Functional functional_from_name(const std::string& name);
std::string functional_name(Functional f);

struct Violation {
  double t_before = 0.0;
  double t_after = 0.0;
  int value_before = 0;
  int value_after = 0;
};

struct MonotonicityReport {
  Functional functional = Functional::z;
  std::vector<Violation> violations;
  std::size_t masked_count = 0;
  bool pass = true;  // pass == violations.empty()
};

/// Compares consecutive unmasked entries; any strict integer increase is a
/// violation. Snapshots flagged degenerate are skipped entirely.
MonotonicityReport check_monotone(const Trajectory& traj, Functional functional);

}  // namespace zeroflow
