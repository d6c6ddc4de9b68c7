#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zeroflow/delay.hpp"
#include "zeroflow/parabolic.hpp"
#include "zeroflow/trajectory.hpp"
#include "zeroflow/transport.hpp"

namespace zeroflow {

enum class ProblemKind { parabolic, delay, transport };

ProblemKind problem_kind_from_name(const std::string& name);
std::string problem_kind_name(ProblemKind kind);

/// Fully determines a run: identical configs produce byte-identical outputs.
struct RunConfig {
  ProblemKind kind = ProblemKind::parabolic;

  // Coefficient descriptors (see CoefficientField::parse).
  std::string a_field = "const:1";
  std::string b_field = "const:0";
  std::string c_field = "const:0";
  BoundarySpec bc;

  double p = 1.0, q = 0.0;                      // delay
  double a_coef = -1.0, alpha_tilde = 0.0;      // transport boundary functional

  std::size_t n = 257;
  std::size_t m = 200;
  double r = 1.0;
  double dt = 1e-3;
  double t_final = 0.5;
  int record_every = 1;
  std::uint64_t seed = 0;
  int trials = 100;
  double eps_rel = 1e-9;
  int k_max = 8;
  int modes = 4;
  std::string out_dir;
  std::string format = "csv";
  std::string functional = "auto";  // z | v_minus | v_plus | auto

  Functional resolve_functional() const;

  std::string to_json_string() const;
  static RunConfig from_json_string(const std::string& text);
  /// Overwrites only the keys present in the file.
  void apply_json_overrides(const std::string& path);
};

struct TrialResult {
  int index = 0;
  bool pass = false;
  bool error = false;
  std::size_t violations = 0;
  std::size_t masked = 0;
  std::string message;
};

struct CampaignSummary {
  int trials = 0;
  int failures = 0;  // trials that ran and found a violation
  int errors = 0;    // trials that refused to run
  std::string functional;
  std::vector<TrialResult> results;

  std::string to_json_string() const;
};

/// Executes config.trials independent runs with per-trial seeds seed+index,
/// checks the chosen functional on each, writes per-trial CSVs plus one JSON
/// summary when out_dir is set. Trial errors are recorded and the campaign
/// continues.
CampaignSummary run_campaign(const RunConfig& config);

/// Runs a single seeded trial (used by the CLI simulate commands).
Trajectory run_trial(const RunConfig& config, std::uint64_t trial_seed,
                     bool store_snapshots = false);

struct WitnessResult {
  bool found = false;
  std::uint64_t seed = 0;
  std::vector<Violation> violations;
  bool persists_under_refinement = false;
  int trials_spent = 0;

  std::string to_json_string() const;
};

/// Seeded search for an unmasked increase of the configured functional.
/// A hit is re-run at doubled resolution and halved step to report whether
/// it persists. Outcomes are reports, never assertions.
WitnessResult witness_search(const RunConfig& family, int budget);

}  // namespace zeroflow
