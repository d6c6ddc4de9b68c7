#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "zeroflow/campaign.hpp"
#include "zeroflow/generator_probe.hpp"
#include "zeroflow/random_init.hpp"

namespace zf = zeroflow;

namespace {

struct CommonOpts {
  zf::RunConfig cfg;
  std::string config_path;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--n", opts.cfg.n, "grid size");
  cmd->add_option("--dt", opts.cfg.dt, "time step");
  cmd->add_option("--t-final", opts.cfg.t_final, "final time");
  cmd->add_option("--seed", opts.cfg.seed, "base seed");
  cmd->add_option("--trials", opts.cfg.trials, "trial count");
  cmd->add_option("--eps-rel", opts.cfg.eps_rel, "relative zero threshold");
  cmd->add_option("--record-every", opts.cfg.record_every, "recording cadence in steps");
  cmd->add_option("--out", opts.cfg.out_dir, "output directory");
  cmd->add_option("--config", opts.config_path, "JSON config overriding flags");
  cmd->add_option("--format", opts.cfg.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--functional", opts.cfg.functional, "z|v_minus|v_plus|auto")
      ->check(CLI::IsMember({"z", "v_minus", "v_plus", "auto"}));
}

void finalize(CommonOpts& opts) {
  if (!opts.config_path.empty()) opts.cfg.apply_json_overrides(opts.config_path);
}

void write_trajectory(const zf::RunConfig& cfg, const zf::Trajectory& traj,
                      const std::string& name) {
  if (cfg.out_dir.empty()) return;
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream out(std::filesystem::path(cfg.out_dir) / name);
  traj.write_csv(out);
}

int report_and_exit_code(const zf::Trajectory& traj, zf::Functional functional) {
  const zf::MonotonicityReport report = zf::check_monotone(traj, functional);
  std::cout << zf::functional_name(functional) << " check: "
            << (report.pass ? "pass" : "FAIL") << " (" << report.violations.size()
            << " violations, " << report.masked_count << " masked)\n";
  return report.pass ? 0 : 1;
}

int run_simulate(CommonOpts& opts, zf::ProblemKind kind) {
  finalize(opts);
  opts.cfg.kind = kind;
  const zf::Trajectory traj = zf::run_trial(opts.cfg, opts.cfg.seed, /*store=*/false);
  write_trajectory(opts.cfg, traj, "trajectory.csv");
  if (kind == zf::ProblemKind::transport && !opts.cfg.out_dir.empty()) {
    const auto cmap = zf::CharacteristicMap::build(
        zf::CoefficientField::parse(opts.cfg.b_field), opts.cfg.n);
    std::ofstream out(std::filesystem::path(opts.cfg.out_dir) / "characteristics.csv");
    cmap.write_csv(out);
  }
  return report_and_exit_code(traj, opts.cfg.resolve_functional());
}

int run_probe(CommonOpts& opts, const std::string& problem, double t_small, double width) {
  finalize(opts);
  zf::SemigroupOracle oracle;
  if (problem == "heat") {
    zf::ParabolicProblem prob;
    oracle = zf::make_parabolic_semigroup(prob, opts.cfg.n);
  } else if (problem == "parabolic") {
    zf::ParabolicProblem prob;
    prob.a = zf::CoefficientField::parse(opts.cfg.a_field);
    prob.b = zf::CoefficientField::parse(opts.cfg.b_field);
    prob.c = zf::CoefficientField::parse(opts.cfg.c_field);
    oracle = zf::make_parabolic_semigroup(prob, opts.cfg.n);
  } else {
    zf::TransportProblem prob;
    prob.b = zf::CoefficientField::parse(opts.cfg.b_field);
    prob.c = zf::CoefficientField::parse(opts.cfg.c_field);
    const auto cmap = zf::CharacteristicMap::build(prob.b, opts.cfg.n);
    oracle = zf::make_transport_semigroup(prob, cmap);
  }
  const zf::GeneratorEstimate est =
      zf::extract_coefficients(oracle, opts.cfg.n, t_small, width);
  if (!opts.cfg.out_dir.empty()) {
    std::filesystem::create_directories(opts.cfg.out_dir);
    std::ofstream csv(std::filesystem::path(opts.cfg.out_dir) / "generator.csv");
    est.write_csv(csv);
    std::ofstream js(std::filesystem::path(opts.cfg.out_dir) / "probe_summary.json");
    js << "{\n  \"residual\": " << est.residual << ",\n  \"t_small\": " << est.t_small
       << ",\n  \"eps_rel\": " << opts.cfg.eps_rel << ",\n  \"alpha_tolerance\": 1e-3\n}\n";
  }
  std::cout << "path residual: " << est.residual
            << ", alpha nonnegative: " << (est.alpha_nonnegative() ? "yes" : "NO") << "\n";
  return est.alpha_nonnegative() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Lyapunov functionals along one-dimensional semiflows"};
  app.require_subcommand(1);

  CommonOpts sim_par, sim_del, sim_tra, camp, wit, probe;
  std::string probe_problem = "heat";
  double probe_t_small = 1e-6;
  double probe_width = 0.2;
  int witness_budget = 100;
  std::string check_file;
  std::string check_functional = "z";

  auto* sp = app.add_subcommand("simulate-parabolic", "one seeded second-order run");
  add_common(sp, sim_par);
  sp->add_option("--a", sim_par.cfg.a_field, "diffusion field descriptor");
  sp->add_option("--b", sim_par.cfg.b_field, "drift field descriptor");
  sp->add_option("--c", sim_par.cfg.c_field, "potential field descriptor");
  sp->add_option("--k-max", sim_par.cfg.k_max, "modes in the random initial condition");
  std::vector<double> bc;
  sp->add_option("--bc", bc, "boundary couplings d00 d01 d10 d11")->expected(4);

  auto* sd = app.add_subcommand("simulate-delay", "one seeded delay run");
  add_common(sd, sim_del);
  sd->add_option("--p", sim_del.cfg.p, "delayed-term coefficient");
  sd->add_option("--q", sim_del.cfg.q, "instantaneous-term coefficient");
  sd->add_option("--m", sim_del.cfg.m, "history samples per delay span");
  sd->add_option("--r", sim_del.cfg.r, "delay span");
  sd->add_option("--modes", sim_del.cfg.modes, "modes in the random history");

  auto* st = app.add_subcommand("simulate-transport", "one seeded first-order run");
  add_common(st, sim_tra);
  st->add_option("--b", sim_tra.cfg.b_field, "speed field descriptor (must be positive)");
  st->add_option("--c", sim_tra.cfg.c_field, "growth field descriptor");
  st->add_option("--a-coef", sim_tra.cfg.a_coef, "boundary weight on phi(0)");
  st->add_option("--alpha-tilde", sim_tra.cfg.alpha_tilde, "boundary weight on phi(1)");
  st->add_option("--k-max", sim_tra.cfg.k_max, "modes in the random initial condition");

  auto* pg = app.add_subcommand("probe-generator", "recover generator coefficients");
  add_common(pg, probe);
  pg->add_option("--problem", probe_problem, "heat|parabolic|transport")
      ->check(CLI::IsMember({"heat", "parabolic", "transport"}));
  pg->add_option("--a", probe.cfg.a_field, "diffusion field descriptor");
  pg->add_option("--b", probe.cfg.b_field, "drift/speed field descriptor");
  pg->add_option("--c", probe.cfg.c_field, "potential/growth field descriptor");
  pg->add_option("--t-small", probe_t_small, "probe time");
  pg->add_option("--width", probe_width, "test-function plateau width");

  auto* cp = app.add_subcommand("campaign", "seeded randomized trial campaign");
  add_common(cp, camp);
  std::string camp_kind = "parabolic";
  cp->add_option("--kind", camp_kind, "parabolic|delay|transport")
      ->check(CLI::IsMember({"parabolic", "delay", "transport"}));
  cp->add_option("--a", camp.cfg.a_field, "diffusion field descriptor");
  cp->add_option("--b", camp.cfg.b_field, "drift/speed field descriptor");
  cp->add_option("--c", camp.cfg.c_field, "potential/growth field descriptor");
  cp->add_option("--p", camp.cfg.p, "delay: delayed-term coefficient");
  cp->add_option("--q", camp.cfg.q, "delay: instantaneous-term coefficient");
  cp->add_option("--m", camp.cfg.m, "delay: history samples");
  cp->add_option("--r", camp.cfg.r, "delay span");
  cp->add_option("--k-max", camp.cfg.k_max, "modes in random initial conditions");
  cp->add_option("--modes", camp.cfg.modes, "modes in random histories");

  auto* ws = app.add_subcommand("witness-search", "search for a functional increase");
  add_common(ws, wit);
  std::string wit_kind = "delay";
  ws->add_option("--kind", wit_kind, "parabolic|delay|transport")
      ->check(CLI::IsMember({"parabolic", "delay", "transport"}));
  ws->add_option("--budget", witness_budget, "trial budget");
  ws->add_option("--p", wit.cfg.p, "delay: delayed-term coefficient");
  ws->add_option("--q", wit.cfg.q, "delay: instantaneous-term coefficient");
  ws->add_option("--m", wit.cfg.m, "delay: history samples");
  ws->add_option("--modes", wit.cfg.modes, "modes in random histories");
  std::vector<double> wbc;
  ws->add_option("--bc", wbc, "parabolic boundary couplings")->expected(4);

  auto* ck = app.add_subcommand("check", "re-verify monotonicity of a trajectory CSV");
  ck->add_option("file", check_file, "trajectory CSV")->required();
  ck->add_option("--functional", check_functional, "z|v_minus|v_plus")
      ->check(CLI::IsMember({"z", "v_minus", "v_plus"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sp->parsed()) {
      if (bc.size() == 4) {
        sim_par.cfg.bc = zf::BoundarySpec::non_separated(bc[0], bc[1], bc[2], bc[3]);
      }
      return run_simulate(sim_par, zf::ProblemKind::parabolic);
    }
    if (sd->parsed()) return run_simulate(sim_del, zf::ProblemKind::delay);
    if (st->parsed()) return run_simulate(sim_tra, zf::ProblemKind::transport);
    if (pg->parsed()) return run_probe(probe, probe_problem, probe_t_small, probe_width);
    if (cp->parsed()) {
      camp.cfg.kind = zf::problem_kind_from_name(camp_kind);
      finalize(camp);
      const zf::CampaignSummary summary = zf::run_campaign(camp.cfg);
      std::cout << summary.to_json_string() << "\n";
      if (summary.errors > 0) return 2;
      return summary.failures > 0 ? 1 : 0;
    }
    if (ws->parsed()) {
      wit.cfg.kind = zf::problem_kind_from_name(wit_kind);
      finalize(wit);
      if (wbc.size() == 4) {
        wit.cfg.bc = zf::BoundarySpec::non_separated(wbc[0], wbc[1], wbc[2], wbc[3]);
      }
      const zf::WitnessResult result = zf::witness_search(wit.cfg, witness_budget);
      std::cout << result.to_json_string() << "\n";
      if (!wit.cfg.out_dir.empty()) {
        std::filesystem::create_directories(wit.cfg.out_dir);
        std::ofstream out(std::filesystem::path(wit.cfg.out_dir) / "witness.json");
        out << result.to_json_string() << "\n";
      }
      return 0;
    }
    if (ck->parsed()) {
      std::ifstream in(check_file);
      if (!in) throw std::runtime_error("cannot open " + check_file);
      const zf::Trajectory traj = zf::read_trajectory_csv(in);
      return report_and_exit_code(traj, zf::functional_from_name(check_functional));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
