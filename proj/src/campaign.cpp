#include "zeroflow/campaign.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "zeroflow/random_init.hpp"

namespace zeroflow {

namespace {

using nlohmann::json;

ParabolicProblem make_parabolic(const RunConfig& cfg) {
  ParabolicProblem prob;
  prob.a = CoefficientField::parse(cfg.a_field);
  prob.b = CoefficientField::parse(cfg.b_field);
  prob.c = CoefficientField::parse(cfg.c_field);
  prob.bc = cfg.bc;
  return prob;
}

TransportProblem make_transport(const RunConfig& cfg) {
  TransportProblem prob;
  prob.b = CoefficientField::parse(cfg.b_field);
  prob.c = CoefficientField::parse(cfg.c_field);
  prob.a_coef = cfg.a_coef;
  prob.alpha_tilde = cfg.alpha_tilde;
  return prob;
}

}  // namespace

ProblemKind problem_kind_from_name(const std::string& name) {
  if (name == "parabolic") return ProblemKind::parabolic;
  if (name == "delay") return ProblemKind::delay;
  if (name == "transport") return ProblemKind::transport;
  throw std::invalid_argument("unknown problem kind: " + name);
}

std::string problem_kind_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::parabolic: return "parabolic";
    case ProblemKind::delay: return "delay";
    default: return "transport";
  }
}

Functional RunConfig::resolve_functional() const {
  if (functional != "auto") return functional_from_name(functional);
  switch (kind) {
    case ProblemKind::parabolic:
      return Functional::z;
    case ProblemKind::delay:
      return p >= 0.0 ? Functional::v_minus : Functional::v_plus;
    default:
      return a_coef <= 0.0 ? Functional::v_minus : Functional::v_plus;
  }
}

std::string RunConfig::to_json_string() const {
  json j;
  j["kind"] = problem_kind_name(kind);
  j["a"] = a_field;
  j["b"] = b_field;
  j["c"] = c_field;
  j["bc"] = {bc.d00, bc.d01, bc.d10, bc.d11};
  j["p"] = p;
  j["q"] = q;
  j["a_coef"] = a_coef;
  j["alpha_tilde"] = alpha_tilde;
  j["n"] = n;
  j["m"] = m;
  j["r"] = r;
  j["dt"] = dt;
  j["t_final"] = t_final;
  j["record_every"] = record_every;
  j["seed"] = seed;
  j["trials"] = trials;
  j["eps_rel"] = eps_rel;
  j["k_max"] = k_max;
  j["modes"] = modes;
  j["out"] = out_dir;
  j["format"] = format;
  j["functional"] = functional;
  return j.dump(2);
}

namespace {

void apply_json(RunConfig& cfg, const json& j) {
  if (j.contains("kind")) cfg.kind = problem_kind_from_name(j["kind"].get<std::string>());
  if (j.contains("a")) cfg.a_field = j["a"].get<std::string>();
  if (j.contains("b")) cfg.b_field = j["b"].get<std::string>();
  if (j.contains("c")) cfg.c_field = j["c"].get<std::string>();
  if (j.contains("bc")) {
    const auto arr = j["bc"];
    if (!arr.is_array() || arr.size() != 4) {
      throw std::invalid_argument("bc must be an array of four reals");
    }
    cfg.bc = BoundarySpec::non_separated(arr[0].get<double>(), arr[1].get<double>(),
                                         arr[2].get<double>(), arr[3].get<double>());
  }
  if (j.contains("p")) cfg.p = j["p"].get<double>();
  if (j.contains("q")) cfg.q = j["q"].get<double>();
  if (j.contains("a_coef")) cfg.a_coef = j["a_coef"].get<double>();
  if (j.contains("alpha_tilde")) cfg.alpha_tilde = j["alpha_tilde"].get<double>();
  if (j.contains("n")) cfg.n = j["n"].get<std::size_t>();
  if (j.contains("m")) cfg.m = j["m"].get<std::size_t>();
  if (j.contains("r")) cfg.r = j["r"].get<double>();
  if (j.contains("dt")) cfg.dt = j["dt"].get<double>();
  if (j.contains("t_final")) cfg.t_final = j["t_final"].get<double>();
  if (j.contains("record_every")) cfg.record_every = j["record_every"].get<int>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
  if (j.contains("eps_rel")) cfg.eps_rel = j["eps_rel"].get<double>();
  if (j.contains("k_max")) cfg.k_max = j["k_max"].get<int>();
  if (j.contains("modes")) cfg.modes = j["modes"].get<int>();
  if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
  if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  if (j.contains("functional")) cfg.functional = j["functional"].get<std::string>();
}

}  // namespace

RunConfig RunConfig::from_json_string(const std::string& text) {
  RunConfig cfg;
  apply_json(cfg, json::parse(text));
  return cfg;
}

void RunConfig::apply_json_overrides(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  apply_json(*this, json::parse(ss.str()));
}

Trajectory run_trial(const RunConfig& config, std::uint64_t trial_seed, bool store_snapshots) {
  const Tolerance tol{config.eps_rel};
  switch (config.kind) {
    case ProblemKind::parabolic: {
      const ParabolicProblem prob = make_parabolic(config);
      const GridFunction u0 = random_fourier(trial_seed, config.k_max, config.n, config.bc);
      return simulate(prob, u0, config.t_final, config.dt, config.record_every, tol,
                      store_snapshots);
    }
    case ProblemKind::delay: {
      const DelayProblem prob = DelayProblem::linear(config.p, config.q);
      const History phi0 = random_history(trial_seed, config.modes, config.r, config.m);
      return simulate(prob, phi0, config.t_final, config.record_every, tol, store_snapshots);
    }
    default: {
      const TransportProblem prob = make_transport(config);
      const CharacteristicMap cmap = CharacteristicMap::build(prob.b, config.n);
      const GridFunction phi0 = random_fourier(trial_seed, config.k_max, config.n);
      return evolve(prob, phi0, config.t_final, config.dt, cmap, config.record_every, tol,
                    store_snapshots);
    }
  }
}

std::string CampaignSummary::to_json_string() const {
  json j;
  j["trials"] = trials;
  j["failures"] = failures;
  j["errors"] = errors;
  j["functional"] = functional;
  json arr = json::array();
  for (const auto& r : results) {
    json e;
    e["index"] = r.index;
    e["pass"] = r.pass;
    e["error"] = r.error;
    e["violations"] = r.violations;
    e["masked"] = r.masked;
    if (r.error) e["message"] = r.message;
    arr.push_back(e);
  }
  j["results"] = arr;
  return j.dump(2);
}

CampaignSummary run_campaign(const RunConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("campaign needs trials >= 1");
  const Functional functional = config.resolve_functional();

  CampaignSummary summary;
  summary.trials = config.trials;
  summary.functional = functional_name(functional);

  const bool write_files = !config.out_dir.empty();
  if (write_files) std::filesystem::create_directories(config.out_dir);

  for (int i = 0; i < config.trials; ++i) {
    TrialResult result;
    result.index = i;
    try {
      const Trajectory traj = run_trial(config, config.seed + static_cast<std::uint64_t>(i));
      const MonotonicityReport report = check_monotone(traj, functional);
      result.pass = report.pass;
      result.violations = report.violations.size();
      result.masked = report.masked_count;
      if (!report.pass) ++summary.failures;
      if (write_files && config.format == "csv") {
        std::ofstream out(std::filesystem::path(config.out_dir) /
                          ("trial_" + std::to_string(i) + ".csv"));
        traj.write_csv(out);
      }
    } catch (const std::exception& e) {
      result.error = true;
      result.message = e.what();
      ++summary.errors;
    }
    summary.results.push_back(result);
  }

  if (write_files) {
    std::ofstream out(std::filesystem::path(config.out_dir) / "summary.json");
    out << summary.to_json_string() << "\n";
  }
  return summary;
}

std::string WitnessResult::to_json_string() const {
  json j;
  j["found"] = found;
  j["seed"] = seed;
  j["trials_spent"] = trials_spent;
  j["persists_under_refinement"] = persists_under_refinement;
  json arr = json::array();
  for (const auto& v : violations) {
    arr.push_back({{"t_before", v.t_before},
                   {"t_after", v.t_after},
                   {"value_before", v.value_before},
                   {"value_after", v.value_after}});
  }
  j["violations"] = arr;
  return j.dump(2);
}

WitnessResult witness_search(const RunConfig& family, int budget) {
  if (budget < 1) throw std::invalid_argument("witness_search needs budget >= 1");
  const Functional functional = family.resolve_functional();

  WitnessResult result;
  for (int i = 0; i < budget; ++i) {
    result.trials_spent = i + 1;
    const std::uint64_t trial_seed = family.seed + static_cast<std::uint64_t>(i);
    const Trajectory traj = run_trial(family, trial_seed);
    const MonotonicityReport report = check_monotone(traj, functional);
    if (report.pass) continue;

    result.found = true;
    result.seed = trial_seed;
    result.violations = report.violations;

    // Refinement run: doubled resolution, halved step. Grid effects can
    // fabricate increases, so persistence is reported alongside the hit.
    RunConfig refined = family;
    refined.n = 2 * family.n - 1;
    refined.m = 2 * family.m;
    refined.dt = 0.5 * family.dt;
    try {
      const Trajectory fine = run_trial(refined, trial_seed);
      result.persists_under_refinement = !check_monotone(fine, functional).pass;
    } catch (const std::exception&) {
      result.persists_under_refinement = false;
    }
    return result;
  }
  result.trials_spent = budget;
  return result;
}

}  // namespace zeroflow
