#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swiptgame/equilibrium.hpp"
#include "swiptgame/oracle.hpp"
#include "swiptgame/scenario.hpp"

namespace swiptgame {

enum class SweepVariable { inter_distance, eh_threshold_dbm, sinr_threshold_db };

std::string_view to_string(SweepVariable v);

/// A seeded Monte Carlo sweep over one variable. The per-trial substream is
/// keyed by (seed, trial index) only, so the same trial sees the same channel
/// draw at every sweep value; curves over the sweep variable are paired.
struct SweepSpec {
  SweepVariable variable = SweepVariable::inter_distance;
  std::vector<double> values;  // ascending
  int trials = 1000;
  ChannelConfig base_channel;
  ConstraintTemplate base_constraints;
  std::uint64_t seed = 1;

  DynamicsOptions dynamics;           // power sweeps only
  int oracle_steps_per_decade = 50;   // power sweeps only
  int oracle_refine_rounds = 3;
  int max_attempt_factor = 1000;      // cap: attempts <= trials * factor per point
};

struct SweepPoint {
  double sweep_value = 0.0;
  double existence_probability = 0.0;
  std::optional<double> mean_total_power_ne_w;      // over feasible, converged trials
  std::optional<double> mean_total_power_oracle_w;  // ditto
  std::optional<double> mean_iterations;
  int trials_feasible = 0;
  int trials_attempted = 0;
  int trials_nonconverged = 0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::uint64_t seed = 0;
  std::string rng_algorithm;
  std::string spec_echo_json;  // resolved spec, embedded in the provenance sidecar
};

/// Fraction of channel draws admitting an equilibrium, per sweep value.
/// Sweeps inter_distance or sinr_threshold_db (applied to every pair).
SweepResult run_existence_sweep(const SweepSpec& spec);

/// Equilibrium vs cooperative-optimum total power per harvesting threshold,
/// two-pair networks only. Each point accumulates `trials` feasible draws
/// (existence does not depend on the threshold, so the same draws qualify at
/// every point); averages are taken in watts over converged runs.
SweepResult run_eh_sweep(const SweepSpec& spec);

/// Dynamics from n_inits random positive starting profiles (per-pair powers
/// log-uniform between -20 and +30 dBm).
std::vector<DynamicsResult> run_convergence_experiment(const Scenario& s, int n_inits,
                                                       std::uint64_t seed,
                                                       const DynamicsOptions& opt = {});

/// CSV with columns sweep_value, existence_probability, ne_total_dbm,
/// oracle_total_dbm, mean_iterations, trials_feasible; unavailable metrics
/// render as empty fields. Byte-stable for a fixed SweepResult.
std::string sweep_csv(const SweepResult& r);

std::string sweep_provenance_json(const SweepResult& r);

/// Writes the CSV plus a <path>.provenance.json sidecar.
void write_sweep_outputs(const SweepResult& r, const std::string& csv_path);

/// CSV with columns iteration, pair, p_dbm, alpha; iteration 0 is the
/// initial profile (p_dbm is -inf for zero power).
std::string trace_csv(const DynamicsResult& r);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace swiptgame
