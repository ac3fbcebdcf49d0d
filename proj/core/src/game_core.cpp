#include "swiptgame/game_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace swiptgame {

namespace {

constexpr double kAlphaSlack = 1e-9;       // tolerated numeric overshoot of [0, 1)
constexpr double kAlphaMax = 1.0 - 1e-15;  // clamp target below 1
// splitting_ratio is evaluated at near-fixed-point powers where both
// constraints sit at equality, so its feasibility test compares powers
// (the scale the iteration residual lives on) with a relative slack well
// above dynamics stopping tolerances.
constexpr double kPowerFeasibilitySlack = 1e-6;

[[noreturn]] void fail(const char* what) {
  throw std::invalid_argument(std::string("LocalObservation: ") + what);
}

}  // namespace

void LocalObservation::validate() const {
  if (!std::isfinite(own_gain) || !(own_gain > 0.0)) fail("own_gain must be finite and > 0");
  if (!std::isfinite(interference_plus_antenna_noise) ||
      !(interference_plus_antenna_noise > 0.0))
    fail("interference_plus_antenna_noise must be finite and > 0");
  if (!std::isfinite(id_noise) || !(id_noise > 0.0)) fail("id_noise must be finite and > 0");
  if (!std::isfinite(sinr_threshold) || !(sinr_threshold > 0.0))
    fail("sinr_threshold must be finite and > 0");
  if (!std::isfinite(eh_threshold) || eh_threshold < 0.0)
    fail("eh_threshold must be finite and >= 0");
  if (!(efficiency > 0.0) || !(efficiency < 1.0)) fail("efficiency must lie in (0, 1)");
}

double sinr(const PairStrategy& s, const LocalObservation& obs) {
  return s.info_share * s.power_w * obs.own_gain /
         (s.info_share * obs.interference_plus_antenna_noise + obs.id_noise);
}

double harvested_energy(const PairStrategy& s, const LocalObservation& obs) {
  return obs.efficiency * s.alpha *
         (s.power_w * obs.own_gain + obs.interference_plus_antenna_noise);
}

double antenna_noise_harvest_gap(const PairStrategy& s, const LocalObservation& obs,
                                 double antenna_noise_w) {
  return obs.efficiency * s.alpha * antenna_noise_w;
}

PairStrategy best_response(const LocalObservation& obs) {
  const double x = obs.interference_plus_antenna_noise;
  const double g = obs.own_gain;
  const double gamma = obs.sinr_threshold;
  const double s2 = obs.id_noise;
  const double y = obs.eh_threshold / obs.efficiency;

  const double v = x - y + gamma * x + gamma * s2;
  const double sqrt_delta = (y == 0.0) ? v : std::sqrt(v * v + 4.0 * gamma * y * s2);

  const double w = -x + y + gamma * x + gamma * s2;
  double p;
  if (w >= 0.0) {
    p = (w + sqrt_delta) / (2.0 * g);
  } else {
    // w < 0 implies x > y, so the rationalized numerator stays positive; the
    // direct w + sqrt_delta would cancel catastrophically here.
    p = 2.0 * gamma * x * (x + s2 - y) / (g * (sqrt_delta - w));
  }

  const double b = x + y + gamma * x + gamma * s2;
  double alpha = (y == 0.0) ? 0.0 : 2.0 * y / (b + sqrt_delta);

  // decoder share (v + sqrt_delta)/(b + sqrt_delta), rationalized when v < 0
  double share;
  if (y == 0.0) {
    share = 1.0;
  } else if (v >= 0.0) {
    share = (v + sqrt_delta) / (b + sqrt_delta);
  } else {
    share = 4.0 * gamma * y * s2 / ((sqrt_delta - v) * (b + sqrt_delta));
  }

  if (!(alpha >= -kAlphaSlack && alpha <= 1.0 + kAlphaSlack))
    throw std::logic_error("best_response: splitting ratio escaped [0,1) beyond tolerance");
  alpha = std::clamp(alpha, 0.0, kAlphaMax);
  share = std::clamp(share, 1e-15, 1.0);

  return PairStrategy{p, alpha, share};
}

std::optional<double> splitting_ratio(double power_w, const LocalObservation& obs) {
  if (!(power_w > 0.0)) return std::nullopt;
  const double x = obs.interference_plus_antenna_noise;
  const double y = obs.eh_threshold / obs.efficiency;

  const double alpha = (y == 0.0) ? 0.0 : y / (power_w * obs.own_gain + x);
  if (alpha >= 1.0) return std::nullopt;

  // smallest power meeting the SINR constraint at this splitting ratio; the
  // noise term is representation-limited once alpha rounds toward one, so
  // the slack widens with that floor rather than refusing an answer
  const double usable = 1.0 - alpha;
  const double required = obs.sinr_threshold * (x + obs.id_noise / usable) / obs.own_gain;
  const double slack = kPowerFeasibilitySlack + 1e-12 / usable;
  if (power_w < required * (1.0 - slack)) return std::nullopt;

  return std::min(alpha, kAlphaMax);
}

}  // namespace swiptgame
