#include <cstdarg>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "swiptgame/equilibrium.hpp"
#include "swiptgame/experiments.hpp"
#include "swiptgame/oracle.hpp"
#include "swiptgame/scenario.hpp"
#include "swiptgame/units.hpp"
#include "swiptgame/version.hpp"

namespace {

using namespace swiptgame;
using nlohmann::ordered_json;

// stable exit-code contract
constexpr int kOk = 0;
constexpr int kParseError = 1;
constexpr int kNotExistent = 2;
constexpr int kBoundary = 3;
constexpr int kNoConvergence = 4;

std::string strprintf(const char* format, ...) {
  va_list args;
  va_start(args, format);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

struct CommonFlags {
  double tol = 1e-8;
  int max_iter = 1000;
  std::string schedule = "jacobi";
  std::uint64_t seed = 1;
  bool force = false;
  std::string output;
};

DynamicsOptions dynamics_options(const CommonFlags& f) {
  DynamicsOptions opt;
  opt.tol = f.tol;
  opt.max_iter = f.max_iter;
  opt.schedule = f.schedule == "gauss-seidel" ? UpdateSchedule::gauss_seidel
                                              : UpdateSchedule::jacobi;
  return opt;
}

void print_existence(const ExistenceReport& rep) {
  std::printf("rho=%.6f exists=%s\n", rep.spectral_radius,
              std::string(to_string(rep.verdict)).c_str());
  std::printf("method=%s iterations=%d bound_gap=%.3e mmatrix_positive=%s\n",
              std::string(rep.method).c_str(), rep.iterations_used, rep.bound_gap,
              rep.mmatrix_positive ? "true" : "false");
}

int verdict_exit(const ExistenceReport& rep) {
  switch (rep.verdict) {
    case ExistenceVerdict::exists: return kOk;
    case ExistenceVerdict::not_exists: return kNotExistent;
    case ExistenceVerdict::boundary: return kBoundary;
  }
  return kBoundary;
}

void write_provenance(const std::string& output, const ordered_json& config) {
  ordered_json j;
  j["library_version"] = kVersion;
  j["rng_algorithm"] = SplitMix64::kAlgorithmName;
  j["config"] = config;
  write_text_file(output + ".provenance.json", j.dump(2) + "\n");
}

int cmd_check(const std::string& scenario_path, double tol) {
  const Scenario s = load_scenario(scenario_path);
  const ExistenceReport rep = existence_check(s, tol);
  print_existence(rep);
  return verdict_exit(rep);
}

int cmd_solve(const std::string& scenario_path, const CommonFlags& flags) {
  const Scenario s = load_scenario(scenario_path);
  const ExistenceReport rep = existence_check(s);
  std::printf("config: schedule=%s tol=%g max_iter=%d force=%s\n", flags.schedule.c_str(),
              flags.tol, flags.max_iter, flags.force ? "true" : "false");
  print_existence(rep);
  if (!rep.exists && !flags.force) return verdict_exit(rep);

  StrategyProfile init;
  init.power_w.assign(static_cast<std::size_t>(s.n_pairs), 0.0);
  const DynamicsResult dr = best_response_dynamics(s, init, dynamics_options(flags));

  if (!flags.output.empty()) {
    write_text_file(flags.output, trace_csv(dr));
    ordered_json cfg;
    cfg["command"] = "solve";
    cfg["scenario"] = scenario_path;
    cfg["schedule"] = flags.schedule;
    cfg["tol"] = flags.tol;
    cfg["max_iter"] = flags.max_iter;
    cfg["force"] = flags.force;
    write_provenance(flags.output, cfg);
  }

  std::printf("converged=%s iterations=%d residual=%.3e\n", dr.converged ? "true" : "false",
              dr.iterations, dr.residual);
  if (!dr.converged) return kNoConvergence;

  const NeVerification ver = verify_ne(dr.final, s, 1e-6);
  std::printf("equilibrium_verified=%s\n", ver.ok ? "true" : "false");
  for (int i = 0; i < s.n_pairs; ++i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    const PairStrategy st{dr.final.power_w[ui], dr.final.alpha[ui]};
    const LocalObservation obs = observe(s, dr.final.power_w, i);
    std::printf("pair %d: p=%.6f dBm alpha=%.9f noise_harvest_gap=%.3e W\n", i + 1,
                watt_to_dbm(st.power_w), st.alpha,
                antenna_noise_harvest_gap(st, obs, s.antenna_noise[ui]));
  }
  return ver.ok ? kOk : kNoConvergence;
}

int cmd_oracle(const std::string& scenario_path, const CommonFlags& flags, double pmin_dbm,
               double pmax_dbm, int steps, int rounds) {
  const Scenario s = load_scenario(scenario_path);
  GridConfig grid;
  grid.p_min_w = dbm_to_watt(pmin_dbm);
  grid.p_max_w = dbm_to_watt(pmax_dbm);
  grid.steps_per_decade = steps;
  grid.refine_rounds = rounds;

  const ExistenceReport rep = existence_check(s);
  print_existence(rep);

  StrategyProfile anchor;
  const StrategyProfile* anchor_ptr = nullptr;
  if (rep.exists) {
    StrategyProfile init;
    init.power_w.assign(static_cast<std::size_t>(s.n_pairs), 0.0);
    DynamicsOptions opt = dynamics_options(flags);
    opt.record_trace = false;
    const DynamicsResult dr = best_response_dynamics(s, init, opt);
    if (dr.converged) {
      anchor = dr.final;
      anchor_ptr = &anchor;
      std::printf("anchor: equilibrium total=%.6f dBm\n",
                  watt_to_dbm(std::accumulate(anchor.power_w.begin(), anchor.power_w.end(), 0.0)));
    }
  }

  OracleResult res;
  try {
    res = oracle_min_total_power(s, grid, anchor_ptr);
  } catch (const InfeasibleBoxError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kNotExistent;
  }

  for (int i = 0; i < s.n_pairs; ++i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    std::printf("pair %d: p=%.6f dBm alpha=%.9f\n", i + 1, watt_to_dbm(res.power_w[ui]),
                res.alpha[ui]);
  }
  std::printf("total=%.6f dBm\n", watt_to_dbm(res.total_power_w));

  if (!flags.output.empty()) {
    ordered_json j;
    j["total_dbm"] = watt_to_dbm(res.total_power_w);
    std::vector<double> p_dbm;
    for (double p : res.power_w) p_dbm.push_back(watt_to_dbm(p));
    j["power_dbm"] = p_dbm;
    j["alpha"] = res.alpha;
    std::vector<double> rounds_dbm;
    for (double t : res.per_round_total_w) rounds_dbm.push_back(watt_to_dbm(t));
    j["per_round_total_dbm"] = rounds_dbm;
    write_text_file(flags.output, j.dump(2) + "\n");
    ordered_json cfg;
    cfg["command"] = "oracle";
    cfg["scenario"] = scenario_path;
    cfg["p_min_dbm"] = pmin_dbm;
    cfg["p_max_dbm"] = pmax_dbm;
    cfg["steps_per_decade"] = steps;
    cfg["refine_rounds"] = rounds;
    write_provenance(flags.output, cfg);
  }
  return kOk;
}

struct SweepFlags {
  int pairs = 2;
  double gamma_db = 0.0;
  double eh_dbm = -20.0;
  double dnn = 5.0;
  double zeta = 3.0;
  double antenna_noise_dbm = -60.0;
  double id_noise_dbm = -50.0;
  double efficiency = 0.5;
  int trials = 0;      // 0 = per-command default, applied in the handler
  std::uint64_t seed = 1;
  std::string output;  // empty = per-command default, applied in the handler
};

SweepSpec base_sweep_spec(const SweepFlags& f) {
  SweepSpec spec;
  spec.trials = f.trials;
  spec.seed = f.seed;
  spec.base_channel.n_pairs = f.pairs;
  spec.base_channel.inner_distance_m = f.dnn;
  spec.base_channel.path_loss_exponent = f.zeta;
  spec.base_constraints.sinr_threshold = {db_to_linear(f.gamma_db)};
  spec.base_constraints.eh_threshold_w = {dbm_to_watt(f.eh_dbm)};
  spec.base_constraints.antenna_noise_w = {dbm_to_watt(f.antenna_noise_dbm)};
  spec.base_constraints.id_noise_w = {dbm_to_watt(f.id_noise_dbm)};
  spec.base_constraints.efficiency = f.efficiency;
  return spec;
}

std::vector<double> arithmetic_grid(double start, double stop, double step) {
  std::vector<double> v;
  for (double x = start; x <= stop + 1e-9; x += step) v.push_back(x);
  return v;
}

int cmd_sweep_existence(SweepFlags f, double dmn_start, double dmn_stop, double dmn_step,
                        double dmn_fixed) {
  if (f.trials <= 0) f.trials = 1000;
  if (f.output.empty()) f.output = "existence_sweep.csv";
  SweepSpec spec = base_sweep_spec(f);
  spec.variable = SweepVariable::inter_distance;
  spec.values = arithmetic_grid(dmn_start, dmn_stop, dmn_step);
  spec.base_channel.inter_distance_m = dmn_fixed;
  const SweepResult res = run_existence_sweep(spec);
  write_sweep_outputs(res, f.output);
  for (const SweepPoint& pt : res.points)
    std::printf("d_mn=%g m: existence_probability=%.4f (%d/%d)\n", pt.sweep_value,
                pt.existence_probability, pt.trials_feasible, pt.trials_attempted);
  std::printf("wrote %s and %s.provenance.json\n", f.output.c_str(), f.output.c_str());
  return kOk;
}

int cmd_sweep_eh(SweepFlags f, double eh_start, double eh_stop, double eh_step, double dmn) {
  if (f.trials <= 0) f.trials = 200;
  if (f.output.empty()) f.output = "eh_sweep.csv";
  SweepSpec spec = base_sweep_spec(f);
  spec.variable = SweepVariable::eh_threshold_dbm;
  spec.values = arithmetic_grid(eh_start, eh_stop, eh_step);
  spec.base_channel.inter_distance_m = dmn;
  const SweepResult res = run_eh_sweep(spec);
  write_sweep_outputs(res, f.output);
  for (const SweepPoint& pt : res.points) {
    const std::string ne =
        pt.mean_total_power_ne_w ? strprintf("%.4f", watt_to_dbm(*pt.mean_total_power_ne_w)) : "n/a";
    const std::string oracle = pt.mean_total_power_oracle_w
                                   ? strprintf("%.4f", watt_to_dbm(*pt.mean_total_power_oracle_w))
                                   : "n/a";
    std::printf("eh=%g dBm: ne_total=%s dBm oracle_total=%s dBm trials=%d\n", pt.sweep_value,
                ne.c_str(), oracle.c_str(), pt.trials_feasible);
  }
  std::printf("wrote %s and %s.provenance.json\n", f.output.c_str(), f.output.c_str());
  return kOk;
}

int cmd_trace(const std::string& scenario_path, CommonFlags flags, int inits) {
  if (flags.output.empty()) flags.output = "trace.csv";
  const Scenario s = load_scenario(scenario_path);
  const ExistenceReport rep = existence_check(s);
  print_existence(rep);
  if (!rep.exists && !flags.force) return verdict_exit(rep);

  const std::vector<DynamicsResult> runs =
      run_convergence_experiment(s, inits, flags.seed, dynamics_options(flags));

  bool all_converged = true;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    std::string path = flags.output;
    if (runs.size() > 1) {
      const std::size_t dot = path.rfind('.');
      const std::string suffix = "_run" + std::to_string(k);
      if (dot == std::string::npos)
        path += suffix;
      else
        path.insert(dot, suffix);
    }
    write_text_file(path, trace_csv(runs[k]));
    std::printf("run %zu: converged=%s iterations=%d -> %s\n", k,
                runs[k].converged ? "true" : "false", runs[k].iterations, path.c_str());
    all_converged = all_converged && runs[k].converged;
  }

  ordered_json cfg;
  cfg["command"] = "trace";
  cfg["scenario"] = scenario_path;
  cfg["inits"] = inits;
  cfg["seed"] = flags.seed;
  cfg["schedule"] = flags.schedule;
  cfg["tol"] = flags.tol;
  cfg["max_iter"] = flags.max_iter;
  write_provenance(flags.output, cfg);
  return all_converged ? kOk : kNoConvergence;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Power-control game analysis for interference channels with joint "
               "information and power transfer"};
  app.require_subcommand(1);

  std::string scenario_path;
  CommonFlags flags;
  SweepFlags sweep;
  double check_tol = 1e-10;
  int inits = 2;
  double pmin_dbm = -20.0, pmax_dbm = 40.0;
  int steps = 50, rounds = 3;
  double dmn_start = 5.0, dmn_stop = 50.0, dmn_step = 5.0, dmn = 10.0;
  double eh_start = -30.0, eh_stop = -10.0, eh_step = 5.0;

  const auto add_scenario = [&](CLI::App* cmd) {
    cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  };
  const auto add_dynamics_flags = [&](CLI::App* cmd) {
    cmd->add_option("--tol", flags.tol, "Relative power-change stopping tolerance");
    cmd->add_option("--max-iter", flags.max_iter, "Iteration cap");
    cmd->add_option("--schedule", flags.schedule, "jacobi | gauss-seidel")
        ->check(CLI::IsMember({"jacobi", "gauss-seidel"}));
    cmd->add_flag("--force", flags.force, "Run dynamics even without guaranteed existence");
  };
  const auto add_sweep_flags = [&](CLI::App* cmd) {
    cmd->add_option("--pairs", sweep.pairs, "Number of source-destination pairs");
    cmd->add_option("--gamma-db", sweep.gamma_db, "SINR threshold, dB, all pairs");
    cmd->add_option("--eh-dbm", sweep.eh_dbm, "Harvesting threshold, dBm, all pairs");
    cmd->add_option("--dnn", sweep.dnn, "Direct-link distance, m");
    cmd->add_option("--zeta", sweep.zeta, "Path-loss exponent");
    cmd->add_option("--antenna-noise-dbm", sweep.antenna_noise_dbm, "Antenna noise, dBm");
    cmd->add_option("--id-noise-dbm", sweep.id_noise_dbm, "Decoder noise, dBm");
    cmd->add_option("--efficiency", sweep.efficiency, "Harvester efficiency in (0,1)");
    cmd->add_option("--trials", sweep.trials, "Monte Carlo trials per sweep point");
    cmd->add_option("--seed", sweep.seed, "Sweep seed");
    cmd->add_option("--output", sweep.output, "Output CSV path");
  };

  auto* check = app.add_subcommand("check", "Existence/uniqueness condition for a scenario");
  add_scenario(check);
  check->add_option("--tol", check_tol, "Spectral-radius bracket tolerance");

  auto* solve = app.add_subcommand("solve", "Iterate best responses to the equilibrium");
  add_scenario(solve);
  add_dynamics_flags(solve);
  solve->add_option("--output", flags.output, "Write the iteration trace CSV here");

  auto* oracle =
      app.add_subcommand("oracle", "Cooperative minimum-total-power baseline (<= 3 pairs)");
  add_scenario(oracle);
  add_dynamics_flags(oracle);
  oracle->add_option("--output", flags.output, "Write the result JSON here");
  oracle->add_option("--pmin-dbm", pmin_dbm, "Search box lower edge, dBm");
  oracle->add_option("--pmax-dbm", pmax_dbm, "Search box upper edge, dBm");
  oracle->add_option("--steps", steps, "Grid steps per decade");
  oracle->add_option("--rounds", rounds, "Refinement rounds");

  auto* sweep_existence =
      app.add_subcommand("sweep-existence", "Existence probability vs cross-link distance");
  add_sweep_flags(sweep_existence);
  sweep_existence->add_option("--dmn-start", dmn_start, "First cross-link distance, m");
  sweep_existence->add_option("--dmn-stop", dmn_stop, "Last cross-link distance, m");
  sweep_existence->add_option("--dmn-step", dmn_step, "Distance step, m");

  auto* sweep_eh = app.add_subcommand(
      "sweep-eh", "Equilibrium vs cooperative total power across harvesting thresholds (2 pairs)");
  add_sweep_flags(sweep_eh);
  sweep_eh->add_option("--eh-start", eh_start, "First threshold, dBm");
  sweep_eh->add_option("--eh-stop", eh_stop, "Last threshold, dBm");
  sweep_eh->add_option("--eh-step", eh_step, "Threshold step, dBm");
  sweep_eh->add_option("--dmn", dmn, "Cross-link distance, m");

  auto* trace = app.add_subcommand("trace", "Per-iteration traces from random starting points");
  add_scenario(trace);
  add_dynamics_flags(trace);
  trace->add_option("--inits", inits, "Number of random starting profiles");
  trace->add_option("--seed", flags.seed, "Seed for the starting profiles");
  trace->add_option("--output", flags.output,
                    "Trace CSV path (suffixed _runK when inits > 1), default trace.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kParseError;
  }

  try {
    if (app.got_subcommand(check)) return cmd_check(scenario_path, check_tol);
    if (app.got_subcommand(solve)) return cmd_solve(scenario_path, flags);
    if (app.got_subcommand(oracle))
      return cmd_oracle(scenario_path, flags, pmin_dbm, pmax_dbm, steps, rounds);
    if (app.got_subcommand(sweep_existence))
      return cmd_sweep_existence(sweep, dmn_start, dmn_stop, dmn_step, dmn);
    if (app.got_subcommand(sweep_eh)) return cmd_sweep_eh(sweep, eh_start, eh_stop, eh_step, dmn);
    if (app.got_subcommand(trace)) return cmd_trace(scenario_path, flags, inits);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kParseError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kParseError;
  }
  return kParseError;
}
