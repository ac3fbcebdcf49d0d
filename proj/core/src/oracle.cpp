#include "swiptgame/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swiptgame/equilibrium.hpp"

namespace swiptgame {

namespace {

constexpr double kAlphaMax = 1.0 - 1e-15;

std::vector<double> log_grid(double lo, double hi, int steps_per_decade) {
  const double decades = std::log10(hi / lo);
  const int count = std::max(2, static_cast<int>(std::ceil(decades * steps_per_decade)) + 1);
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k)
    g[static_cast<std::size_t>(k)] = lo * std::pow(hi / lo, static_cast<double>(k) / (count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

/// Feasible alpha interval of a single pair from its local view.
std::optional<AlphaInterval> local_alpha_interval(double power_w, const LocalObservation& obs) {
  if (!(power_w > 0.0)) return std::nullopt;
  const double x = obs.interference_plus_antenna_noise;
  const double own = power_w * obs.own_gain;
  const double y = obs.eh_threshold / obs.efficiency;

  const double lo = (y == 0.0) ? 0.0 : y / (own + x);
  if (lo >= 1.0) return std::nullopt;

  const double margin = own - obs.sinr_threshold * x;
  if (!(margin > 0.0)) return std::nullopt;
  const double hi =
      std::min(kAlphaMax, 1.0 - obs.sinr_threshold * obs.id_noise / margin);
  if (hi < 0.0 || lo > hi) return std::nullopt;
  return AlphaInterval{lo, hi};
}

}  // namespace

void GridConfig::validate() const {
  if (!(p_min_w > 0.0) || !(p_min_w < p_max_w))
    throw std::invalid_argument("GridConfig: requires 0 < p_min_w < p_max_w");
  if (steps_per_decade < 10)
    throw std::invalid_argument("GridConfig: steps_per_decade must be >= 10");
  if (refine_rounds < 0) throw std::invalid_argument("GridConfig: refine_rounds must be >= 0");
}

GridConfig single_pair_box(const LocalObservation& obs, const GridConfig& base) {
  const double x = obs.interference_plus_antenna_noise;
  const double y = obs.eh_threshold / obs.efficiency;
  const double gamma = obs.sinr_threshold;
  GridConfig g = base;
  // optimum lies strictly above gamma*X/G and below 1.5*(gamma*(X+s2)+Y)/G
  g.p_min_w = 0.5 * gamma * x / obs.own_gain;
  g.p_max_w = 4.0 * (gamma * (x + obs.id_noise) + y) / obs.own_gain;
  return g;
}

std::optional<AlphaInterval> feasible_alpha_interval(const std::vector<double>& powers,
                                                     int pair, const Scenario& s) {
  const LocalObservation obs = observe(s, powers, pair);
  return local_alpha_interval(powers[static_cast<std::size_t>(pair)], obs);
}

PairStrategy brute_force_best_response(const LocalObservation& obs, const GridConfig& g) {
  g.validate();
  const auto feasible = [&](double p) { return local_alpha_interval(p, obs).has_value(); };

  const std::vector<double> grid = log_grid(g.p_min_w, g.p_max_w, g.steps_per_decade);
  std::size_t first = grid.size();
  for (std::size_t k = 0; k < grid.size(); ++k)
    if (feasible(grid[k])) {
      first = k;
      break;
    }
  if (first == grid.size())
    throw InfeasibleBoxError("brute_force_best_response: no feasible power in [" +
                             std::to_string(g.p_min_w) + ", " + std::to_string(g.p_max_w) +
                             "] W");

  double lo = first == 0 ? g.p_min_w : grid[first - 1];
  double hi = grid[first];
  for (int round = 0; round < g.refine_rounds && lo < hi; ++round) {
    const int count = g.steps_per_decade + 1;
    double prev = lo;
    double found = hi;
    for (int k = 1; k <= count; ++k) {
      const double p = lo * std::pow(hi / lo, static_cast<double>(k) / count);
      if (feasible(p)) {
        found = p;
        break;
      }
      prev = p;
    }
    lo = prev;
    hi = found;
  }

  const auto interval = local_alpha_interval(hi, obs);
  return PairStrategy{hi, interval ? interval->lo : 0.0};
}

namespace {

struct BestCandidate {
  bool valid = false;
  std::vector<double> power;
  double total = 0.0;

  void offer(const std::vector<double>& p, double tot) {
    if (!valid || tot < total ||
        (tot == total && std::lexicographical_compare(p.begin(), p.end(), power.begin(),
                                                      power.end()))) {
      valid = true;
      power = p;
      total = tot;
    }
  }
};

}  // namespace

OracleResult oracle_min_total_power(const Scenario& s, const GridConfig& g,
                                    const StrategyProfile* anchor) {
  g.validate();
  s.validate();
  const int n = s.n_pairs;
  if (n > 3)
    throw std::invalid_argument("oracle_min_total_power: n_pairs must be <= 3 (grid growth)");
  if (anchor && anchor->size() != n)
    throw std::invalid_argument("oracle_min_total_power: anchor size mismatch");

  const auto profile_feasible = [&](const std::vector<double>& p) {
    for (int i = 0; i < n; ++i)
      if (!feasible_alpha_interval(p, i, s)) return false;
    return true;
  };

  std::vector<double> box_lo(static_cast<std::size_t>(n)), box_hi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    if (anchor) {
      box_lo[ui] = anchor->power_w[ui] * 1e-3;
      box_hi[ui] = anchor->power_w[ui] * 10.0;
    } else {
      box_lo[ui] = g.p_min_w;
      box_hi[ui] = g.p_max_w;
    }
  }

  BestCandidate best;

  // Anchored mode: feasibility along the scaled-anchor ray is monotone in
  // the scale, so a bisection pins the smallest feasible scaled copy; for an
  // equilibrium anchor that lands within ulps of the anchor itself. This
  // seeds the incumbent with a point the coarse grid cannot represent.
  if (anchor) {
    const auto scaled = [&](double scale) {
      std::vector<double> p = anchor->power_w;
      for (double& v : p) v *= scale;
      return p;
    };
    double s_lo = 1e-3, s_hi = 1.1;
    if (profile_feasible(scaled(s_lo))) {
      s_hi = s_lo;
    } else {
      for (int it = 0; it < 80 && !profile_feasible(scaled(s_hi)); ++it) s_hi *= 1.1;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (s_lo + s_hi);
        (profile_feasible(scaled(mid)) ? s_hi : s_lo) = mid;
      }
    }
    const std::vector<double> ray_point = scaled(s_hi);
    if (profile_feasible(ray_point)) {
      double tot = 0.0;
      for (double v : ray_point) tot += v;
      best.offer(ray_point, tot);
    }
  }

  OracleResult out;
  std::vector<double> lo = box_lo, hi = box_hi;
  for (int round = 0; round <= g.refine_rounds; ++round) {
    std::vector<std::vector<double>> grids(static_cast<std::size_t>(n));
    std::vector<double> step(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const std::size_t ui = static_cast<std::size_t>(i);
      grids[ui] = log_grid(lo[ui], hi[ui], g.steps_per_decade);
      step[ui] = grids[ui].size() > 1 ? grids[ui][1] / grids[ui][0] : 1.0;
    }

    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    std::vector<double> p(static_cast<std::size_t>(n));
    for (;;) {
      double tot = 0.0;
      for (int i = 0; i < n; ++i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        p[ui] = grids[ui][idx[ui]];
        tot += p[ui];
      }
      if ((!best.valid || tot < best.total) && profile_feasible(p)) best.offer(p, tot);

      int carry = n - 1;
      while (carry >= 0 && ++idx[static_cast<std::size_t>(carry)] ==
                               grids[static_cast<std::size_t>(carry)].size()) {
        idx[static_cast<std::size_t>(carry)] = 0;
        --carry;
      }
      if (carry < 0) break;
    }

    if (!best.valid) {
      std::string msg = "oracle_min_total_power: no feasible grid point; box per pair:";
      for (int i = 0; i < n; ++i)
        msg += " [" + std::to_string(box_lo[static_cast<std::size_t>(i)]) + ", " +
               std::to_string(box_hi[static_cast<std::size_t>(i)]) + "] W";
      throw InfeasibleBoxError(msg);
    }
    out.per_round_total_w.push_back(best.total);

    for (int i = 0; i < n; ++i) {
      const std::size_t ui = static_cast<std::size_t>(i);
      lo[ui] = std::max(box_lo[ui], best.power[ui] / step[ui]);
      hi[ui] = std::min(box_hi[ui], best.power[ui] * step[ui]);
    }
  }

  out.power_w = best.power;
  out.total_power_w = best.total;
  out.alpha.resize(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const auto interval = feasible_alpha_interval(best.power, i, s);
    out.alpha[static_cast<std::size_t>(i)] = interval ? interval->lo : 0.0;
  }
  return out;
}

}  // namespace swiptgame
