#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "swiptgame/matrix.hpp"
#include "swiptgame/rng.hpp"

namespace swiptgame {

/// A full network instance. Immutable by convention after construction and
/// safe to share across concurrent workers. All quantities are linear
/// (watts and W/W); dB/dBm exist only in files and CLI output.
struct Scenario {
  int n_pairs = 0;
  Matrix gains;                        // (m, n): power gain source m -> destination n
  std::vector<double> antenna_noise;   // per destination, W
  std::vector<double> id_noise;        // per destination, W
  std::vector<double> sinr_threshold;  // per pair, linear
  std::vector<double> eh_threshold;    // per pair, W (0 allowed)
  double efficiency = 0.5;             // shared harvester efficiency, (0, 1)

  /// Throws std::invalid_argument naming the violated field.
  void validate() const;

  bool operator==(const Scenario&) const = default;
};

/// Path-loss geometry for seeded Rayleigh channel generation: mean link gain
/// is attenuation_at_1m * d^-zeta at distance d meters.
struct ChannelConfig {
  int n_pairs = 2;
  double inner_distance_m = 5.0;       // source n -> destination n
  double inter_distance_m = 10.0;      // all cross links, unless distances_m set
  std::optional<Matrix> distances_m;   // full per-link distances, overrides scalars
  double path_loss_exponent = 3.0;     // in [2, 5]
  double attenuation_at_1m = 1e-3;
  std::uint64_t rng_seed = 1;

  void validate() const;
};

/// Per-pair constraint values; length-1 vectors broadcast to every pair.
struct ConstraintTemplate {
  std::vector<double> sinr_threshold{1.0};    // linear
  std::vector<double> eh_threshold_w{1e-5};
  std::vector<double> antenna_noise_w{1e-9};
  std::vector<double> id_noise_w{1e-8};
  double efficiency = 0.5;
};

/// Draws an n x n matrix of independent exponential gains (Rayleigh power
/// fading) with mean attenuation_at_1m * d^-zeta; entries consumed in
/// row-major order, so a fixed rng state reproduces the scenario bit for bit.
Scenario generate_rayleigh_scenario(const ChannelConfig& cfg, const ConstraintTemplate& tpl,
                                    SplitMix64& rng);

/// Convenience overload seeding a fresh stream from cfg.rng_seed.
Scenario generate_rayleigh_scenario(const ChannelConfig& cfg, const ConstraintTemplate& tpl);

/// Raised on malformed scenario files; the message names the offending field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Loads a scenario JSON document. Two forms are accepted:
///  - explicit:  {n_pairs, gains (row-major, source-major, linear),
///                antenna_noise_dbm, id_noise_dbm, sinr_threshold_db,
///                eh_threshold_dbm | eh_threshold_w, efficiency}
///  - generated: {n_pairs, inner_distance_m, inter_distance_m | distances_m,
///                zeta, seed, [attenuation_at_1m], ...same constraint fields}
/// Scalar constraint fields broadcast to all pairs.
Scenario load_scenario(const std::string& path);
Scenario scenario_from_json_text(const std::string& text);

/// Serializes to the explicit file form.
std::string scenario_to_json_text(const Scenario& s);

}  // namespace swiptgame
