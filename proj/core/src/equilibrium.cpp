#include "swiptgame/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swiptgame {

Matrix build_omega(const Scenario& s) {
  const int n = s.n_pairs;
  Matrix omega(n, n, 0.0);
  for (int dst = 0; dst < n; ++dst)
    for (int src = 0; src < n; ++src)
      if (src != dst)
        omega(dst, src) = s.gains(src, dst) * s.sinr_threshold[static_cast<std::size_t>(dst)] /
                          s.gains(dst, dst);
  return omega;
}

SpectralRadiusResult spectral_radius(const Matrix& m, double tol, int max_iter) {
  const int n = m.rows();
  if (n == 0 || m.cols() != n) throw std::invalid_argument("spectral_radius: square matrix required");

  const double eps = 0.5 * m.max_row_sum();
  Matrix shifted = m;
  for (int i = 0; i < n; ++i) shifted(i, i) += eps;

  std::vector<double> v(static_cast<std::size_t>(n), 1.0 / n);
  SpectralRadiusResult out;
  double lo = 0.0, hi = 0.0;
  for (int iter = 1; iter <= max_iter; ++iter) {
    const std::vector<double> w = shifted.multiply(v);
    lo = std::numeric_limits<double>::infinity();
    hi = 0.0;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double ratio = w[static_cast<std::size_t>(i)] / v[static_cast<std::size_t>(i)];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      sum += w[static_cast<std::size_t>(i)];
    }
    out.iterations = iter;
    if (hi - lo <= tol) {
      out.converged = true;
      break;
    }
    if (!(sum > 0.0) || !std::isfinite(sum)) break;  // zero or overflowed iterate
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] / sum;
  }

  out.lower = std::max(0.0, lo - eps);
  out.upper = std::max(0.0, hi - eps);
  out.value = std::max(0.0, 0.5 * (lo + hi) - eps);
  return out;
}

std::string_view to_string(ExistenceVerdict v) {
  switch (v) {
    case ExistenceVerdict::exists: return "true";
    case ExistenceVerdict::not_exists: return "false";
    case ExistenceVerdict::boundary: return "boundary";
  }
  return "?";
}

std::string_view to_string(UpdateSchedule s) {
  return s == UpdateSchedule::jacobi ? "jacobi" : "gauss-seidel";
}

ExistenceReport existence_check(const Scenario& s, double tol) {
  s.validate();
  const int n = s.n_pairs;
  const Matrix omega = build_omega(s);

  const SpectralRadiusResult sr = spectral_radius(omega, tol);

  // certified verdict from the bracket; undecided only when it straddles 1
  int power_verdict = 0;
  if (sr.upper < 1.0)
    power_verdict = 1;
  else if (sr.lower >= 1.0)
    power_verdict = -1;

  Matrix i_minus_omega = Matrix::identity(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) i_minus_omega(r, c) -= omega(r, c);
  const auto x = solve_linear(i_minus_omega, std::vector<double>(static_cast<std::size_t>(n), 1.0));
  bool mm_positive = x.has_value();
  if (x)
    for (double xi : *x) mm_positive = mm_positive && xi > 0.0;

  ExistenceReport rep;
  rep.spectral_radius = sr.value;
  rep.iterations_used = sr.iterations;
  rep.bound_gap = sr.upper - sr.lower;
  rep.power_method_exists = power_verdict == 1;
  rep.mmatrix_positive = mm_positive;
  if (power_verdict == 1 && mm_positive)
    rep.verdict = ExistenceVerdict::exists;
  else if (power_verdict == -1 && !mm_positive)
    rep.verdict = ExistenceVerdict::not_exists;
  else
    rep.verdict = ExistenceVerdict::boundary;
  rep.exists = rep.verdict == ExistenceVerdict::exists;
  return rep;
}

LocalObservation observe(const Scenario& s, const std::vector<double>& powers, int pair) {
  if (pair < 0 || pair >= s.n_pairs) throw std::invalid_argument("observe: pair out of range");
  if (static_cast<int>(powers.size()) != s.n_pairs)
    throw std::invalid_argument("observe: power vector size mismatch");
  double x = s.antenna_noise[static_cast<std::size_t>(pair)];
  for (int m = 0; m < s.n_pairs; ++m)
    if (m != pair) x += powers[static_cast<std::size_t>(m)] * s.gains(m, pair);
  return LocalObservation{
      s.gains(pair, pair),
      x,
      s.id_noise[static_cast<std::size_t>(pair)],
      s.sinr_threshold[static_cast<std::size_t>(pair)],
      s.eh_threshold[static_cast<std::size_t>(pair)],
      s.efficiency,
  };
}

DynamicsResult best_response_dynamics(const Scenario& s, const StrategyProfile& init,
                                      const DynamicsOptions& opt) {
  const int n = s.n_pairs;
  if (init.size() != n)
    throw std::invalid_argument("best_response_dynamics: init profile size mismatch");

  StrategyProfile cur = init;
  cur.alpha.resize(static_cast<std::size_t>(n), 0.0);

  DynamicsResult out;
  if (opt.record_trace) out.trace.push_back(cur);

  for (int iter = 1; iter <= opt.max_iter; ++iter) {
    StrategyProfile next = cur;
    if (opt.schedule == UpdateSchedule::jacobi) {
      for (int i = 0; i < n; ++i) {
        const PairStrategy br = best_response(observe(s, cur.power_w, i));
        next.power_w[static_cast<std::size_t>(i)] = br.power_w;
        next.alpha[static_cast<std::size_t>(i)] = br.alpha;
      }
    } else {
      for (int i = 0; i < n; ++i) {
        const PairStrategy br = best_response(observe(s, next.power_w, i));
        next.power_w[static_cast<std::size_t>(i)] = br.power_w;
        next.alpha[static_cast<std::size_t>(i)] = br.alpha;
      }
    }

    double residual = 0.0;
    for (int i = 0; i < n; ++i) {
      const double prev = cur.power_w[static_cast<std::size_t>(i)];
      const double diff = std::abs(next.power_w[static_cast<std::size_t>(i)] - prev);
      residual = std::max(residual,
                          prev > 0.0 ? diff / prev : std::numeric_limits<double>::infinity());
    }

    cur = std::move(next);
    if (opt.record_trace) out.trace.push_back(cur);
    out.iterations = iter;
    out.residual = residual;
    if (residual < opt.tol) {
      out.converged = true;
      break;
    }
  }

  out.final = std::move(cur);
  return out;
}

NeVerification verify_ne(const StrategyProfile& profile, const Scenario& s, double tol) {
  const int n = s.n_pairs;
  NeVerification v;
  if (profile.size() != n || static_cast<int>(profile.alpha.size()) != n) return v;

  v.power_residual.resize(static_cast<std::size_t>(n));
  v.alpha_residual.resize(static_cast<std::size_t>(n));
  v.sinr_rel_dev.resize(static_cast<std::size_t>(n));
  v.eh_rel_dev.resize(static_cast<std::size_t>(n));
  v.ok = true;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const std::size_t ui = static_cast<std::size_t>(i);
    const double p = profile.power_w[ui];
    const double a = profile.alpha[ui];
    const LocalObservation obs = observe(s, profile.power_w, i);

    const PairStrategy br = best_response(obs);
    v.power_residual[ui] = p > 0.0 ? std::abs(p - br.power_w) / p : kInf;

    // splitting_ratio declines to answer when p sits exactly on the
    // feasibility boundary, which is where every equilibrium lives; fall
    // back to the harvesting-tight ratio and let the deviation columns
    // arbitrate constraint satisfaction
    const auto f = splitting_ratio(p, obs);
    double f_alpha = kInf;
    if (f) {
      f_alpha = *f;
    } else if (p > 0.0) {
      const double y = obs.eh_threshold / obs.efficiency;
      const double tight = y / (p * obs.own_gain + obs.interference_plus_antenna_noise);
      if (tight < 1.0) f_alpha = tight;
    }
    v.alpha_residual[ui] = f_alpha == kInf ? kInf : std::abs(a - f_alpha);

    const PairStrategy st{p, a};
    v.sinr_rel_dev[ui] = std::abs(sinr(st, obs) - obs.sinr_threshold) / obs.sinr_threshold;
    v.eh_rel_dev[ui] = obs.eh_threshold > 0.0
                           ? std::abs(harvested_energy(st, obs) - obs.eh_threshold) / obs.eh_threshold
                           : 0.0;

    const bool bounds_ok = p >= 0.0 && a >= 0.0 && a < 1.0;
    v.ok = v.ok && bounds_ok && v.power_residual[ui] < tol && v.alpha_residual[ui] < tol &&
           v.sinr_rel_dev[ui] < tol && v.eh_rel_dev[ui] < tol;
  }
  return v;
}

ContractionGapResult contraction_gap(const Scenario& s, const std::vector<double>& p,
                                     const std::vector<double>& q) {
  const int n = s.n_pairs;
  if (static_cast<int>(p.size()) != n || static_cast<int>(q.size()) != n)
    throw std::invalid_argument("contraction_gap: power vector size mismatch");

  ContractionGapResult out;
  out.lhs.resize(static_cast<std::size_t>(n));
  out.rhs.resize(static_cast<std::size_t>(n));

  const Matrix omega = build_omega(s);
  std::vector<double> abs_diff(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    abs_diff[static_cast<std::size_t>(i)] =
        std::abs(p[static_cast<std::size_t>(i)] - q[static_cast<std::size_t>(i)]);
  out.rhs = omega.multiply(abs_diff);

  for (int i = 0; i < n; ++i) {
    const double tp = best_response(observe(s, p, i)).power_w;
    const double tq = best_response(observe(s, q, i)).power_w;
    out.lhs[static_cast<std::size_t>(i)] = std::abs(tp - tq);
  }
  return out;
}

double z_factor(const Scenario& s, int pair, const std::vector<double>& p,
                const std::vector<double>& q) {
  const auto discriminant_parts = [&](const std::vector<double>& powers) {
    const LocalObservation o = observe(s, powers, pair);
    const double x = o.interference_plus_antenna_noise;
    const double gamma = o.sinr_threshold;
    const double s2 = o.id_noise;
    const double y = o.eh_threshold / o.efficiency;
    const double v = x - y + gamma * x + gamma * s2;
    const double root = std::sqrt(v * v + 4.0 * gamma * y * s2);
    return std::pair<double, double>{v, root};
  };
  const auto [v1, r1] = discriminant_parts(p);
  const auto [v2, r2] = discriminant_parts(q);
  return (v1 + v2) / (r1 + r2);
}

}  // namespace swiptgame
