#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "swiptgame/game_core.hpp"
#include "swiptgame/scenario.hpp"

namespace swiptgame {

/// Log-spaced search box for the grid-search baselines. Powers span many
/// decades in practice, so the grid is geometric; each refinement round
/// re-grids a two-step window around the incumbent.
struct GridConfig {
  double p_min_w = 1e-5;  // -20 dBm
  double p_max_w = 10.0;  // +40 dBm
  int steps_per_decade = 50;
  int refine_rounds = 3;

  void validate() const;
};

/// Search box covering the single-pair optimum for the given observation
/// with guaranteed margin on both sides; grid density copied from `base`.
GridConfig single_pair_box(const LocalObservation& obs, const GridConfig& base);

struct AlphaInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// The set of splitting ratios feasible for pair `pair` at the given power
/// profile, as a closed interval inside [0, 1): the harvesting constraint
/// bounds alpha from below, the SINR constraint from above. Returns nullopt
/// when the interval is empty (an answer, not an error). A profile is
/// cooperatively feasible exactly when every pair's interval is nonempty.
std::optional<AlphaInterval> feasible_alpha_interval(const std::vector<double>& powers,
                                                     int pair, const Scenario& s);

struct OracleResult {
  std::vector<double> power_w;
  std::vector<double> alpha;             // minimal splitting at the optimum
  double total_power_w = 0.0;
  std::vector<double> per_round_total_w; // incumbent after each round; nonincreasing
};

/// Raised when the search box contains no feasible point; the message
/// reports the box bounds.
class InfeasibleBoxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cooperative minimum-total-power baseline by exhaustive log-grid search
/// (n_pairs <= 3). Alpha is never gridded: for fixed powers feasibility in
/// alpha is the closed-form interval above. When `anchor` is given (normally
/// the equilibrium profile) it sizes per-pair boxes as [p * 1e-3, p * 10] and
/// seeds the incumbent by bisecting the smallest feasible scaled copy of the
/// anchor, so the result never sits measurably above a feasible anchor's
/// total. The returned point always satisfies the exact per-pair feasibility
/// check.
OracleResult oracle_min_total_power(const Scenario& s, const GridConfig& g,
                                    const StrategyProfile* anchor = nullptr);

/// Grid-search solution of the single-pair minimum-power problem; the
/// independent reference for best_response. Scans the grid upward for the
/// first feasible power, then refines the bracketing step refine_rounds
/// times.
PairStrategy brute_force_best_response(const LocalObservation& obs, const GridConfig& g);

}  // namespace swiptgame
