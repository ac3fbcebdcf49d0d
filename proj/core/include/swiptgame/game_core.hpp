#pragma once

#include <optional>
#include <vector>

namespace swiptgame {

/// One pair's action: source transmit power plus the receive-side
/// power-splitting ratio (share of received power routed to the harvester).
///
/// info_share is the decoder's share, kept alongside alpha because a ratio
/// within an ulp of one cannot represent its own complement; harvesting-
/// dominated optima sit exactly there, and the SINR expressions need the
/// complement at full precision.
struct PairStrategy {
  double power_w = 0.0;     // p >= 0
  double alpha = 0.0;       // harvester share, in [0, 1)
  double info_share = 1.0;  // decoder share, equals 1 - alpha

  PairStrategy() = default;
  PairStrategy(double power, double a) : power_w(power), alpha(a), info_share(1.0 - a) {}
  PairStrategy(double power, double a, double share)
      : power_w(power), alpha(a), info_share(share) {}
};

/// Everything one pair can measure locally at its destination.
///
/// interference_plus_antenna_noise is the single number a radio scene
/// analyzer reports: the sum of all cross-link powers and the antenna noise
/// floor. The two contributions are not separable at runtime, so the
/// harvesting model below charges the full measured value to the harvester;
/// antenna_noise_harvest_gap quantifies the noise-floor share.
struct LocalObservation {
  double own_gain = 0.0;                         // G of the direct link, W/W
  double interference_plus_antenna_noise = 0.0;  // X, W
  double id_noise = 0.0;                         // decoder-circuit noise, W
  double sinr_threshold = 0.0;                   // gamma, linear
  double eh_threshold = 0.0;                     // minimum harvested power, W
  double efficiency = 0.0;                       // eta in (0, 1)

  /// Throws std::invalid_argument naming the violated field.
  void validate() const;
};

/// Joint action of all pairs.
struct StrategyProfile {
  std::vector<double> power_w;
  std::vector<double> alpha;

  int size() const { return static_cast<int>(power_w.size()); }
  bool operator==(const StrategyProfile&) const = default;
};

/// Received SINR: (1-a) p G / ((1-a) X + sigma^2).
double sinr(const PairStrategy& s, const LocalObservation& obs);

/// Harvested power eta * a * (p G + X). The measured total X enters as-is.
double harvested_energy(const PairStrategy& s, const LocalObservation& obs);

/// eta * a * antenna_noise_w: the slice of harvested_energy contributed by
/// the antenna-noise floor folded into X. Diagnostic only.
double antenna_noise_harvest_gap(const PairStrategy& s, const LocalObservation& obs,
                                 double antenna_noise_w);

/// Minimum-power strategy that meets the SINR and harvesting constraints,
/// both with equality. Guarantees power_w > 0 and alpha in [0, 1);
/// alpha == 0 exactly when eh_threshold == 0.
///
/// The discriminant is evaluated in factored form (square plus a nonnegative
/// term) and the power/ratio roots are rationalized where the direct
/// expressions would cancel, so the returned strategy satisfies the
/// constraints to a few ulps across extreme parameter ranges.
PairStrategy best_response(const LocalObservation& obs);

/// The splitting ratio paired with transmit power p: the smallest alpha
/// meeting the harvesting constraint at p. Returns nullopt when no
/// alpha in [0, 1) satisfies both constraints at this power. Evaluates to
/// best_response(obs).alpha at the best-response power.
std::optional<double> splitting_ratio(double power_w, const LocalObservation& obs);

}  // namespace swiptgame
