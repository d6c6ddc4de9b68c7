#include "zeroflow/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace zeroflow {

void Trajectory::record(double t, std::span<const double> state, Tolerance tol,
                        bool store_snapshot) {
  const ZeroCount zc = zero_number(state, tol);
  times.push_back(t);
  z_series.push_back(zc.z);
  v_minus_series.push_back(2 * (zc.z / 2) + 1);
  v_plus_series.push_back(2 * ((zc.z + 1) / 2));
  double sup = 0.0;
  for (double v : state) sup = std::max(sup, std::abs(v));
  sup_norms.push_back(sup);
  degenerate_mask.push_back(zc.degenerate ? 1 : 0);
  if (store_snapshot) snapshots.emplace_back(state.begin(), state.end());
}

void Trajectory::write_csv(std::ostream& os) const {
  os << "t,z,v_minus,v_plus,sup_norm,degenerate\n";
  char buf[160];
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%d,%d,%d,%.17g,%d\n", times[i], z_series[i],
                  v_minus_series[i], v_plus_series[i], sup_norms[i],
                  static_cast<int>(degenerate_mask[i]));
    os << buf;
  }
}

std::vector<double> Trajectory::trace_last() const {
  if (snapshots.size() != times.size()) {
    throw std::runtime_error("trace_last requires stored snapshots");
  }
  std::vector<double> out(snapshots.size());
  for (std::size_t i = 0; i < snapshots.size(); ++i) out[i] = snapshots[i].back();
  return out;
}

Trajectory read_trajectory_csv(std::istream& is) {
  Trajectory traj;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty trajectory CSV");
  if (line != "t,z,v_minus,v_plus,sup_norm,degenerate") {
    throw std::runtime_error("unexpected trajectory CSV header: " + line);
  }
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<std::string> toks;
    while (std::getline(ss, tok, ',')) toks.push_back(tok);
    if (toks.size() != 6) {
      throw std::runtime_error("bad trajectory CSV row at line " + std::to_string(lineno));
    }
    traj.times.push_back(std::stod(toks[0]));
    traj.z_series.push_back(std::stoi(toks[1]));
    traj.v_minus_series.push_back(std::stoi(toks[2]));
    traj.v_plus_series.push_back(std::stoi(toks[3]));
    traj.sup_norms.push_back(std::stod(toks[4]));
    traj.degenerate_mask.push_back(static_cast<std::uint8_t>(std::stoi(toks[5])));
  }
  return traj;
}

Functional functional_from_name(const std::string& name) {
  if (name == "z") return Functional::z;
  if (name == "v_minus") return Functional::v_minus;
  if (name == "v_plus") return Functional::v_plus;
  throw std::invalid_argument("unknown functional: " + name);
}

std::string functional_name(Functional f) {
  switch (f) {
    case Functional::z: return "z";
    case Functional::v_minus: return "v_minus";
    default: return "v_plus";
  }
}

MonotonicityReport check_monotone(const Trajectory& traj, Functional functional) {
  MonotonicityReport report;
  report.functional = functional;
  const std::vector<int>* series = nullptr;
  switch (functional) {
    case Functional::z: series = &traj.z_series; break;
    case Functional::v_minus: series = &traj.v_minus_series; break;
    case Functional::v_plus: series = &traj.v_plus_series; break;
  }
  bool have_prev = false;
  int prev_value = 0;
  double prev_t = 0.0;
  for (std::size_t i = 0; i < series->size(); ++i) {
    if (traj.degenerate_mask[i]) {
      ++report.masked_count;
      continue;
    }
    const int v = (*series)[i];
    if (have_prev && v > prev_value) {
      report.violations.push_back({prev_t, traj.times[i], prev_value, v});
    }
    have_prev = true;
    prev_value = v;
    prev_t = traj.times[i];
  }
  report.pass = report.violations.empty();
  return report;
}

}  // namespace zeroflow
