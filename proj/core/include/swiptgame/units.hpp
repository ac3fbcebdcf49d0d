#pragma once

#include <cmath>
#include <stdexcept>

namespace swiptgame {

// All internal computation is carried out in linear watts; dB/dBm appear only
// at interfaces (CLI flags, scenario files, printed output).

/// 0 dBm = 1 mW; returns 10^((x-30)/10) watts.
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// Inverse of dbm_to_watt; rejects non-positive powers.
inline double watt_to_dbm(double watts) {
  if (!(watts > 0.0)) throw std::domain_error("watt_to_dbm: power must be > 0 W");
  return 10.0 * std::log10(watts) + 30.0;
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double lin) {
  if (!(lin > 0.0)) throw std::domain_error("linear_to_db: value must be > 0");
  return 10.0 * std::log10(lin);
}

}  // namespace swiptgame
