#include "swiptgame/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "swiptgame/units.hpp"

namespace swiptgame {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw std::invalid_argument("scenario field \"" + field + "\": " + why);
}

[[noreturn]] void bad_file(const std::string& field, const std::string& why) {
  throw ParseError("scenario field \"" + field + "\": " + why);
}

void check_positive_vector(const std::vector<double>& v, int n, const std::string& field) {
  if (static_cast<int>(v.size()) != n) invalid(field, "wrong length");
  for (double x : v)
    if (!std::isfinite(x) || !(x > 0.0)) invalid(field, "entries must be finite and > 0");
}

std::vector<double> broadcast(const std::vector<double>& v, int n, const std::string& field) {
  if (static_cast<int>(v.size()) == n) return v;
  if (v.size() == 1) return std::vector<double>(static_cast<std::size_t>(n), v[0]);
  invalid(field, "expected 1 or n_pairs entries");
}

}  // namespace

void Scenario::validate() const {
  if (n_pairs < 1) invalid("n_pairs", "must be >= 1");
  if (gains.rows() != n_pairs || gains.cols() != n_pairs) invalid("gains", "must be n_pairs x n_pairs");
  for (int m = 0; m < n_pairs; ++m)
    for (int n = 0; n < n_pairs; ++n) {
      const double g = gains(m, n);
      if (!std::isfinite(g) || g < 0.0) invalid("gains", "entries must be finite and >= 0");
      if (m == n && !(g > 0.0)) invalid("gains", "diagonal entries must be > 0");
    }
  check_positive_vector(antenna_noise, n_pairs, "antenna_noise");
  check_positive_vector(id_noise, n_pairs, "id_noise");
  check_positive_vector(sinr_threshold, n_pairs, "sinr_threshold");
  if (static_cast<int>(eh_threshold.size()) != n_pairs) invalid("eh_threshold", "wrong length");
  for (double e : eh_threshold)
    if (!std::isfinite(e) || e < 0.0) invalid("eh_threshold", "entries must be finite and >= 0");
  if (!(efficiency > 0.0) || !(efficiency < 1.0)) invalid("efficiency", "must lie in (0, 1)");
}

void ChannelConfig::validate() const {
  if (n_pairs < 1) invalid("n_pairs", "must be >= 1");
  if (distances_m) {
    if (distances_m->rows() != n_pairs || distances_m->cols() != n_pairs)
      invalid("distances_m", "must be n_pairs x n_pairs");
    for (double d : distances_m->data())
      if (!std::isfinite(d) || !(d > 0.0)) invalid("distances_m", "entries must be > 0");
  } else {
    if (!(inner_distance_m > 0.0)) invalid("inner_distance_m", "must be > 0");
    if (!(inter_distance_m > 0.0)) invalid("inter_distance_m", "must be > 0");
  }
  if (!(path_loss_exponent >= 2.0) || !(path_loss_exponent <= 5.0))
    invalid("path_loss_exponent", "must lie in [2, 5]");
  if (!(attenuation_at_1m > 0.0)) invalid("attenuation_at_1m", "must be > 0");
}

Scenario generate_rayleigh_scenario(const ChannelConfig& cfg, const ConstraintTemplate& tpl,
                                    SplitMix64& rng) {
  cfg.validate();
  const int n = cfg.n_pairs;

  Scenario s;
  s.n_pairs = n;
  s.gains = Matrix(n, n);
  for (int m = 0; m < n; ++m)
    for (int dst = 0; dst < n; ++dst) {
      const double d = cfg.distances_m ? (*cfg.distances_m)(m, dst)
                                       : (m == dst ? cfg.inner_distance_m : cfg.inter_distance_m);
      const double mean = cfg.attenuation_at_1m * std::pow(d, -cfg.path_loss_exponent);
      s.gains(m, dst) = rng.next_exponential(mean);
    }

  s.sinr_threshold = broadcast(tpl.sinr_threshold, n, "sinr_threshold");
  s.eh_threshold = broadcast(tpl.eh_threshold_w, n, "eh_threshold_w");
  s.antenna_noise = broadcast(tpl.antenna_noise_w, n, "antenna_noise_w");
  s.id_noise = broadcast(tpl.id_noise_w, n, "id_noise_w");
  s.efficiency = tpl.efficiency;
  s.validate();
  return s;
}

Scenario generate_rayleigh_scenario(const ChannelConfig& cfg, const ConstraintTemplate& tpl) {
  SplitMix64 rng(cfg.rng_seed);
  return generate_rayleigh_scenario(cfg, tpl, rng);
}

namespace {

std::vector<double> json_number_or_array(const ordered_json& j, const std::string& field, int n) {
  if (!j.contains(field)) bad_file(field, "missing");
  const auto& v = j.at(field);
  std::vector<double> out;
  if (v.is_number()) {
    out.assign(static_cast<std::size_t>(n), v.get<double>());
  } else if (v.is_array()) {
    if (static_cast<int>(v.size()) != n) bad_file(field, "expected a scalar or n_pairs entries");
    for (const auto& e : v) {
      if (!e.is_number()) bad_file(field, "entries must be numbers");
      out.push_back(e.get<double>());
    }
  } else {
    bad_file(field, "expected a number or an array");
  }
  return out;
}

double json_number(const ordered_json& j, const std::string& field) {
  if (!j.contains(field)) bad_file(field, "missing");
  if (!j.at(field).is_number()) bad_file(field, "expected a number");
  return j.at(field).get<double>();
}

Scenario from_json(const ordered_json& j) {
  if (!j.contains("n_pairs")) bad_file("n_pairs", "missing");
  if (!j.at("n_pairs").is_number_integer()) bad_file("n_pairs", "expected an integer");
  const int n = j.at("n_pairs").get<int>();
  if (n < 1) bad_file("n_pairs", "must be >= 1");

  Scenario s;
  s.n_pairs = n;

  if (j.contains("gains")) {
    const auto& g = j.at("gains");
    if (!g.is_array() || static_cast<int>(g.size()) != n * n)
      bad_file("gains", "expected n_pairs^2 entries, row-major with sources as rows");
    s.gains = Matrix(n, n);
    for (int m = 0; m < n; ++m)
      for (int dst = 0; dst < n; ++dst) {
        const auto& e = g.at(static_cast<std::size_t>(m * n + dst));
        if (!e.is_number()) bad_file("gains", "entries must be numbers");
        s.gains(m, dst) = e.get<double>();
      }
  } else {
    ChannelConfig cfg;
    cfg.n_pairs = n;
    if (!j.contains("seed")) bad_file("seed", "missing (required for generated scenarios)");
    if (!j.at("seed").is_number_integer()) bad_file("seed", "expected an integer");
    cfg.rng_seed = j.at("seed").get<std::uint64_t>();
    cfg.path_loss_exponent = json_number(j, "zeta");
    if (j.contains("attenuation_at_1m")) cfg.attenuation_at_1m = json_number(j, "attenuation_at_1m");
    if (j.contains("distances_m")) {
      const auto& d = j.at("distances_m");
      if (!d.is_array() || static_cast<int>(d.size()) != n * n)
        bad_file("distances_m", "expected n_pairs^2 entries, row-major");
      Matrix dm(n, n);
      for (int m = 0; m < n; ++m)
        for (int dst = 0; dst < n; ++dst) {
          const auto& e = d.at(static_cast<std::size_t>(m * n + dst));
          if (!e.is_number()) bad_file("distances_m", "entries must be numbers");
          dm(m, dst) = e.get<double>();
        }
      cfg.distances_m = std::move(dm);
    } else {
      cfg.inner_distance_m = json_number(j, "inner_distance_m");
      cfg.inter_distance_m = json_number(j, "inter_distance_m");
    }
    ConstraintTemplate tpl;  // placeholder constraints; replaced below
    tpl.sinr_threshold = {1.0};
    try {
      s = generate_rayleigh_scenario(cfg, tpl);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }

  auto to_watt = [](std::vector<double> v) {
    for (double& x : v) x = dbm_to_watt(x);
    return v;
  };
  auto to_linear = [](std::vector<double> v) {
    for (double& x : v) x = db_to_linear(x);
    return v;
  };

  s.antenna_noise = to_watt(json_number_or_array(j, "antenna_noise_dbm", n));
  s.id_noise = to_watt(json_number_or_array(j, "id_noise_dbm", n));
  s.sinr_threshold = to_linear(json_number_or_array(j, "sinr_threshold_db", n));
  if (j.contains("eh_threshold_w"))
    s.eh_threshold = json_number_or_array(j, "eh_threshold_w", n);
  else
    s.eh_threshold = to_watt(json_number_or_array(j, "eh_threshold_dbm", n));
  s.efficiency = json_number(j, "efficiency");

  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return s;
}

}  // namespace

Scenario scenario_from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return from_json(j);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json_text(buf.str());
}

std::string scenario_to_json_text(const Scenario& s) {
  ordered_json j;
  j["n_pairs"] = s.n_pairs;
  j["gains"] = s.gains.data();
  auto dbm = [](const std::vector<double>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (double x : v) out.push_back(watt_to_dbm(x));
    return out;
  };
  j["antenna_noise_dbm"] = dbm(s.antenna_noise);
  j["id_noise_dbm"] = dbm(s.id_noise);
  std::vector<double> db;
  for (double g : s.sinr_threshold) db.push_back(linear_to_db(g));
  j["sinr_threshold_db"] = db;
  bool all_positive = true;
  for (double e : s.eh_threshold) all_positive = all_positive && e > 0.0;
  if (all_positive)
    j["eh_threshold_dbm"] = dbm(s.eh_threshold);
  else
    j["eh_threshold_w"] = s.eh_threshold;
  j["efficiency"] = s.efficiency;
  return j.dump(2) + "\n";
}

}  // namespace swiptgame
