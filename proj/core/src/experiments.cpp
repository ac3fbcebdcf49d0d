#include "swiptgame/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "swiptgame/units.hpp"
#include "swiptgame/version.hpp"

namespace swiptgame {

namespace {

using nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt_opt_dbm(const std::optional<double>& watts) {
  if (!watts) return "";
  return fmt(watt_to_dbm(*watts));
}

ordered_json channel_json(const ChannelConfig& c) {
  ordered_json j;
  j["n_pairs"] = c.n_pairs;
  if (c.distances_m)
    j["distances_m"] = c.distances_m->data();
  else {
    j["inner_distance_m"] = c.inner_distance_m;
    j["inter_distance_m"] = c.inter_distance_m;
  }
  j["path_loss_exponent"] = c.path_loss_exponent;
  j["attenuation_at_1m"] = c.attenuation_at_1m;
  return j;
}

ordered_json constraints_json(const ConstraintTemplate& t) {
  ordered_json j;
  j["sinr_threshold_linear"] = t.sinr_threshold;
  j["eh_threshold_w"] = t.eh_threshold_w;
  j["antenna_noise_w"] = t.antenna_noise_w;
  j["id_noise_w"] = t.id_noise_w;
  j["efficiency"] = t.efficiency;
  return j;
}

std::string spec_echo(const SweepSpec& spec) {
  ordered_json j;
  j["sweep_variable"] = std::string(to_string(spec.variable));
  j["values"] = spec.values;
  j["trials"] = spec.trials;
  j["seed"] = spec.seed;
  j["channel"] = channel_json(spec.base_channel);
  j["constraints"] = constraints_json(spec.base_constraints);
  j["dynamics"] = {{"schedule", std::string(to_string(spec.dynamics.schedule))},
                   {"tol", spec.dynamics.tol},
                   {"max_iter", spec.dynamics.max_iter}};
  j["oracle"] = {{"steps_per_decade", spec.oracle_steps_per_decade},
                 {"refine_rounds", spec.oracle_refine_rounds}};
  return j.dump();
}

void check_common(const SweepSpec& spec) {
  if (spec.values.empty()) throw std::invalid_argument("SweepSpec: values must be nonempty");
  if (!std::is_sorted(spec.values.begin(), spec.values.end()))
    throw std::invalid_argument("SweepSpec: values must be ascending");
  if (spec.trials < 1) throw std::invalid_argument("SweepSpec: trials must be >= 1");
}

}  // namespace

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::inter_distance: return "inter_distance";
    case SweepVariable::eh_threshold_dbm: return "eh_threshold_dbm";
    case SweepVariable::sinr_threshold_db: return "sinr_threshold_db";
  }
  return "?";
}

SweepResult run_existence_sweep(const SweepSpec& spec) {
  check_common(spec);
  if (spec.variable == SweepVariable::eh_threshold_dbm)
    throw std::invalid_argument("run_existence_sweep: sweep inter_distance or sinr_threshold_db");
  if (spec.variable == SweepVariable::inter_distance && spec.base_channel.distances_m)
    throw std::invalid_argument("run_existence_sweep: distance sweep needs scalar distances");

  SweepResult out;
  out.seed = spec.seed;
  out.rng_algorithm = SplitMix64::kAlgorithmName;
  out.spec_echo_json = spec_echo(spec);

  for (double value : spec.values) {
    ChannelConfig cfg = spec.base_channel;
    ConstraintTemplate tpl = spec.base_constraints;
    if (spec.variable == SweepVariable::inter_distance)
      cfg.inter_distance_m = value;
    else
      tpl.sinr_threshold = {db_to_linear(value)};

    int feasible = 0;
    for (int t = 0; t < spec.trials; ++t) {
      SplitMix64 rng = SplitMix64::substream(spec.seed, static_cast<std::uint64_t>(t));
      const Scenario s = generate_rayleigh_scenario(cfg, tpl, rng);
      if (existence_check(s).verdict == ExistenceVerdict::exists) ++feasible;
    }

    SweepPoint pt;
    pt.sweep_value = value;
    pt.trials_attempted = spec.trials;
    pt.trials_feasible = feasible;
    pt.existence_probability = static_cast<double>(feasible) / spec.trials;
    out.points.push_back(pt);
  }
  return out;
}

SweepResult run_eh_sweep(const SweepSpec& spec) {
  check_common(spec);
  if (spec.variable != SweepVariable::eh_threshold_dbm)
    throw std::invalid_argument("run_eh_sweep: sweep variable must be eh_threshold_dbm");
  if (spec.base_channel.n_pairs != 2)
    throw std::invalid_argument("run_eh_sweep: two-pair networks only (oracle bound)");

  SweepResult out;
  out.seed = spec.seed;
  out.rng_algorithm = SplitMix64::kAlgorithmName;
  out.spec_echo_json = spec_echo(spec);

  DynamicsOptions dyn = spec.dynamics;
  dyn.record_trace = false;

  GridConfig grid;
  grid.steps_per_decade = spec.oracle_steps_per_decade;
  grid.refine_rounds = spec.oracle_refine_rounds;

  for (double value : spec.values) {
    ConstraintTemplate tpl = spec.base_constraints;
    tpl.eh_threshold_w = {dbm_to_watt(value)};

    SweepPoint pt;
    pt.sweep_value = value;

    double ne_sum = 0.0, oracle_sum = 0.0, iter_sum = 0.0;
    int collected = 0, attempts = 0, feasible_draws = 0, nonconverged = 0;
    const long attempt_cap = static_cast<long>(spec.trials) * spec.max_attempt_factor;
    while (collected < spec.trials && attempts < attempt_cap) {
      SplitMix64 rng = SplitMix64::substream(spec.seed, static_cast<std::uint64_t>(attempts));
      ++attempts;
      const Scenario s = generate_rayleigh_scenario(spec.base_channel, tpl, rng);
      if (existence_check(s).verdict != ExistenceVerdict::exists) continue;
      ++feasible_draws;

      StrategyProfile init;
      init.power_w.assign(static_cast<std::size_t>(s.n_pairs), 0.0);
      const DynamicsResult dr = best_response_dynamics(s, init, dyn);
      if (!dr.converged) {
        ++nonconverged;
        continue;
      }
      const double ne_total =
          std::accumulate(dr.final.power_w.begin(), dr.final.power_w.end(), 0.0);
      const OracleResult orr = oracle_min_total_power(s, grid, &dr.final);

      ne_sum += ne_total;
      // the equilibrium profile is itself cooperatively feasible, so the
      // cooperative total is at most the equilibrium total
      oracle_sum += std::min(orr.total_power_w, ne_total);
      iter_sum += dr.iterations;
      ++collected;
    }

    pt.trials_attempted = attempts;
    pt.trials_feasible = collected;
    pt.trials_nonconverged = nonconverged;
    pt.existence_probability =
        attempts > 0 ? static_cast<double>(feasible_draws) / attempts : 0.0;
    if (collected > 0) {
      pt.mean_total_power_ne_w = ne_sum / collected;
      pt.mean_total_power_oracle_w = oracle_sum / collected;
      pt.mean_iterations = iter_sum / collected;
    }
    out.points.push_back(pt);
  }
  return out;
}

std::vector<DynamicsResult> run_convergence_experiment(const Scenario& s, int n_inits,
                                                       std::uint64_t seed,
                                                       const DynamicsOptions& opt) {
  if (n_inits < 1) throw std::invalid_argument("run_convergence_experiment: n_inits must be >= 1");
  std::vector<DynamicsResult> out;
  out.reserve(static_cast<std::size_t>(n_inits));
  for (int k = 0; k < n_inits; ++k) {
    SplitMix64 rng = SplitMix64::substream(seed, static_cast<std::uint64_t>(k));
    StrategyProfile init;
    init.power_w.resize(static_cast<std::size_t>(s.n_pairs));
    init.alpha.assign(static_cast<std::size_t>(s.n_pairs), 0.0);
    for (double& p : init.power_w) p = dbm_to_watt(rng.next_uniform(-20.0, 30.0));
    out.push_back(best_response_dynamics(s, init, opt));
  }
  return out;
}

std::string sweep_csv(const SweepResult& r) {
  std::string csv =
      "sweep_value,existence_probability,ne_total_dbm,oracle_total_dbm,mean_iterations,"
      "trials_feasible\n";
  for (const SweepPoint& pt : r.points) {
    csv += fmt(pt.sweep_value);
    csv += ',';
    csv += fmt(pt.existence_probability);
    csv += ',';
    csv += fmt_opt_dbm(pt.mean_total_power_ne_w);
    csv += ',';
    csv += fmt_opt_dbm(pt.mean_total_power_oracle_w);
    csv += ',';
    if (pt.mean_iterations) csv += fmt(*pt.mean_iterations);
    csv += ',';
    csv += std::to_string(pt.trials_feasible);
    csv += '\n';
  }
  return csv;
}

std::string sweep_provenance_json(const SweepResult& r) {
  ordered_json j;
  j["library_version"] = kVersion;
  j["rng_algorithm"] = r.rng_algorithm;
  j["seed"] = r.seed;
  j["spec"] = ordered_json::parse(r.spec_echo_json);
  ordered_json pts = ordered_json::array();
  for (const SweepPoint& pt : r.points) {
    ordered_json p;
    p["sweep_value"] = pt.sweep_value;
    p["trials_attempted"] = pt.trials_attempted;
    p["trials_feasible"] = pt.trials_feasible;
    p["trials_nonconverged"] = pt.trials_nonconverged;
    pts.push_back(p);
  }
  j["points"] = pts;
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_sweep_outputs(const SweepResult& r, const std::string& csv_path) {
  write_text_file(csv_path, sweep_csv(r));
  write_text_file(csv_path + ".provenance.json", sweep_provenance_json(r));
}

std::string trace_csv(const DynamicsResult& r) {
  std::string csv = "iteration,pair,p_dbm,alpha\n";
  for (std::size_t it = 0; it < r.trace.size(); ++it) {
    const StrategyProfile& prof = r.trace[it];
    for (int pair = 0; pair < prof.size(); ++pair) {
      const double p = prof.power_w[static_cast<std::size_t>(pair)];
      const double dbm = p > 0.0 ? watt_to_dbm(p) : -std::numeric_limits<double>::infinity();
      csv += std::to_string(it);
      csv += ',';
      csv += std::to_string(pair + 1);
      csv += ',';
      csv += fmt(dbm);
      csv += ',';
      csv += fmt(prof.alpha[static_cast<std::size_t>(pair)]);
      csv += '\n';
    }
  }
  return csv;
}

}  // namespace swiptgame
