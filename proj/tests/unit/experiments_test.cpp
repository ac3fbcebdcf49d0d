#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "../support/samplers.hpp"
#include "swiptgame/experiments.hpp"
#include "swiptgame/units.hpp"

using namespace swiptgame;

namespace {

SweepSpec desk_spec() {
  SweepSpec spec;
  spec.base_channel.n_pairs = 2;
  spec.base_channel.inner_distance_m = 5.0;
  spec.base_channel.inter_distance_m = 10.0;
  spec.base_constraints.sinr_threshold = {db_to_linear(5.0)};
  spec.base_constraints.eh_threshold_w = {1e-5};
  spec.seed = 77;
  return spec;
}

}  // namespace

TEST_SUITE("experiments") {

  TEST_CASE("existence probability saturates with distance") {
    SweepSpec spec = desk_spec();
    spec.variable = SweepVariable::inter_distance;
    spec.values = {1000.0};
    spec.trials = 50;
    spec.base_constraints.sinr_threshold = {1.0};
    const SweepResult res = run_existence_sweep(spec);
    CHECK(res.points.size() == 1);
    CHECK(res.points[0].existence_probability == 1.0);
  }

  TEST_CASE("vanishing SINR targets decouple the pairs") {
    SweepSpec spec = desk_spec();
    spec.variable = SweepVariable::sinr_threshold_db;
    spec.values = {-120.0};
    spec.trials = 50;
    const SweepResult res = run_existence_sweep(spec);
    CHECK(res.points[0].existence_probability == 1.0);
  }

  TEST_CASE("more pairs never help existence") {
    SweepSpec two = desk_spec();
    two.variable = SweepVariable::inter_distance;
    two.values = {10.0, 20.0};
    two.trials = 300;
    SweepSpec four = two;
    four.base_channel.n_pairs = 4;
    const SweepResult r2 = run_existence_sweep(two);
    const SweepResult r4 = run_existence_sweep(four);
    for (std::size_t i = 0; i < r2.points.size(); ++i) {
      const double pa = r4.points[i].existence_probability;
      const double pb = r2.points[i].existence_probability;
      const double sigma =
          std::sqrt((pa * (1 - pa) + pb * (1 - pb)) / 300.0) + 1.0 / 300.0;
      CHECK(pa <= pb + 3.0 * sigma);
    }
  }

  TEST_CASE("identical seeds yield identical bytes") {
    SweepSpec spec = desk_spec();
    spec.variable = SweepVariable::eh_threshold_dbm;
    spec.values = {-25.0, -15.0};
    spec.trials = 5;
    const std::string a = sweep_csv(run_eh_sweep(spec));
    const std::string b = sweep_csv(run_eh_sweep(spec));
    CHECK(a == b);

    SweepSpec ex = desk_spec();
    ex.variable = SweepVariable::inter_distance;
    ex.values = {10.0, 20.0};
    ex.trials = 20;
    CHECK(sweep_csv(run_existence_sweep(ex)) == sweep_csv(run_existence_sweep(ex)));
  }

  TEST_CASE("harvesting sweep keeps the equilibrium above the cooperative floor") {
    SweepSpec spec = desk_spec();
    spec.variable = SweepVariable::eh_threshold_dbm;
    spec.values = {-30.0, -20.0, -10.0};
    spec.trials = 10;
    const SweepResult res = run_eh_sweep(spec);
    REQUIRE(res.points.size() == 3);
    double prev_ne = 0.0;
    for (const SweepPoint& pt : res.points) {
      REQUIRE(pt.mean_total_power_ne_w.has_value());
      REQUIRE(pt.mean_total_power_oracle_w.has_value());
      CHECK(pt.trials_feasible == 10);
      CHECK(*pt.mean_total_power_ne_w >= *pt.mean_total_power_oracle_w);
      CHECK(*pt.mean_total_power_ne_w >= prev_ne);
      prev_ne = *pt.mean_total_power_ne_w;
    }
    // existence does not depend on the harvesting threshold, so the same
    // draws qualify at every point
    CHECK(res.points[0].trials_attempted == res.points[1].trials_attempted);
    CHECK(res.points[0].trials_attempted == res.points[2].trials_attempted);
  }

  TEST_CASE("csv shape") {
    SweepSpec spec = desk_spec();
    spec.variable = SweepVariable::inter_distance;
    spec.values = {15.0};
    spec.trials = 10;
    const SweepResult res = run_existence_sweep(spec);
    const std::string csv = sweep_csv(res);
    CHECK(csv.rfind("sweep_value,existence_probability,ne_total_dbm,oracle_total_dbm,"
                    "mean_iterations,trials_feasible\n",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);

    const std::string prov = sweep_provenance_json(res);
    CHECK(prov.find("splitmix64") != std::string::npos);
    CHECK(prov.find("\"seed\": 77") != std::string::npos);
  }

  TEST_CASE("random starts all reach the fixed point") {
    SplitMix64 rng(88);
    testsupport::ScenarioSampler sampler;
    sampler.n_pairs = 3;
    const Scenario s = sampler.draw_existent(rng);
    const auto runs = run_convergence_experiment(s, 3, 5);
    REQUIRE(runs.size() == 3);
    for (const DynamicsResult& r : runs) {
      REQUIRE(r.converged);
      CHECK(verify_ne(r.final, s).ok);
      CHECK(r.trace.size() == static_cast<std::size_t>(r.iterations) + 1);
    }
    const std::string csv = trace_csv(runs[0]);
    CHECK(csv.rfind("iteration,pair,p_dbm,alpha\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') ==
          1 + 3 * (static_cast<long>(runs[0].iterations) + 1));
  }
}
