#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sinebeta/closed_forms.hpp"
#include "sinebeta/errors.hpp"
#include "sinebeta/sde.hpp"
#include "sinebeta/series.hpp"
#include "sinebeta/special.hpp"

using namespace sinebeta;
using std::numbers::pi;

namespace {

SdeConfig small(double beta, double delta, std::vector<double> grid, long paths = 4000) {
  SdeConfig c;
  c.beta = beta;
  c.delta = delta;
  c.lambda_grid = std::move(grid);
  c.paths = paths;
  c.master_seed = 11;
  return c;
}

double z(double a, double b, double se) { return std::abs(a - b) / se; }

}  // namespace

TEST_CASE("moment order") {
  CHECK(resolve_k_max(1.0) == 1);
  CHECK(resolve_k_max(3.0) == 3);
  CHECK(resolve_k_max(1.5, 12) == 12);
  for (double d : {0.3, 0.75, 1.5, 2.5}) {
    const int K = resolve_k_max(d);
    CHECK(K >= 8);
    const auto c = pochhammer_ratio_seq(d, K);
    CHECK(std::abs(c[K]) < 1e-4);
    if (K > 8) CHECK(std::abs(c[K - 1]) >= 1e-4);
  }
  CHECK(worker_count(3) == 3);
}

TEST_CASE("results do not depend on the thread count") {
  auto c = small(3.0, 1.5, {0.5, 2.0}, 1500);
  c.threads = 1;
  const auto a = simulate_paths(c);
  c.threads = 3;
  const auto b = simulate_paths(c);
  for (std::size_t i = 0; i < a.moments.size(); ++i) {
    CHECK(a.moments[i].m == b.moments[i].m);
    CHECK(a.moments[i].se == b.moments[i].se);
    CHECK(a.moments[i].weighted == b.moments[i].weighted);
  }
  CHECK(a.monotone_fraction == b.monotone_fraction);
  c.master_seed = 12;
  const auto d = simulate_paths(c);
  CHECK(d.moments[1].m != a.moments[1].m);
}

TEST_CASE("no evolution at or below the cutoff") {
  const auto r = simulate_paths(small(2.0, 1.0, {0.0, 1e-3, 0.5}, 200));
  for (int i = 0; i < 2; ++i) {
    CHECK(r.moments[i].m[0] == 1.0);
    CHECK(r.moments[i].se[0] == 0.0);
  }
  CHECK(r.moments[2].m[0] < 1.0);
  const auto t = mc_hp_density(small(2.0, 1.0, {0.0}, 200));
  CHECK(std::abs(t.rows[0].value) < 1e-15);
}

TEST_CASE("beta = 2 pair correlation") {
  const auto sim = simulate_paths(small(2.0, 1.0, {pi}));
  const auto& m = sim.moments[0];
  CHECK(z(m.m[0], 4 / (pi * pi), m.se[0]) < 4.0);
  CHECK(m.se[0] > 0.0);
  CHECK(m.se[0] <= 1.0 / std::sqrt(double(m.paths - 1)));
  CHECK(sim.monotone_fraction >= 0.99);
  CHECK(sim.coefficient_tail == 0.0);
  const auto t = mc_pair_correlation(sim);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].engine == "mc");
  CHECK(t.rows[0].seed == 11u);
  CHECK(z(t.rows[0].value, sine2_rho2(pi), *t.rows[0].stderr_value) < 4.0);
}

TEST_CASE("beta = 4 moments against the series") {
  const auto sim = simulate_paths(small(4.0, 2.0, {2.0}));
  const auto c = compute_coefficients(2, 4.0, 2.0);
  const auto q = q_series(c, 2.0).q;
  const auto& m = sim.moments[0];
  CHECK(z(m.m[0], q[0].real(), m.se[0]) < 4.0);
  CHECK(z(m.m[1], q[1].real(), m.se[1]) < 4.0);
  const auto t = mc_pair_correlation(sim);
  CHECK(z(t.rows[0].value, sine4_rho2(2.0), *t.rows[0].stderr_value) < 4.0);
}

TEST_CASE("delta = 1 density at a non-matching beta") {
  const auto t = mc_hp_density(small(1.5, 1.0, {2.0}));
  CHECK(z(t.rows[0].value, hp_delta1_density(1.5, 2.0), *t.rows[0].stderr_value) < 4.0);
  CHECK_THROWS_AS(mc_pair_correlation(small(1.5, 1.0, {2.0}, 10)), ConfigError);
}

TEST_CASE("fractional delta tail") {
  const auto sim = simulate_paths(small(3.0, 1.5, {1.0}, 200));
  CHECK(sim.k_max == resolve_k_max(1.5));
  CHECK(sim.coefficient_tail > 0.0);
  CHECK(sim.coefficient_tail < 1e-2);
}

TEST_CASE("time step and cutoff sensitivity") {
  auto a = small(4.0, 2.0, {2.0});
  auto b = a;
  b.dt = 5e-4;
  b.master_seed = 99;
  auto e = a;
  e.eps_cut = 1e-4;
  e.master_seed = 123;
  const auto ra = mc_hp_density(a).rows[0], rb = mc_hp_density(b).rows[0], re = mc_hp_density(e).rows[0];
  const double sab = std::hypot(*ra.stderr_value, *rb.stderr_value);
  const double sae = std::hypot(*ra.stderr_value, *re.stderr_value);
  CHECK(z(ra.value, rb.value, sab) < 4.0);
  CHECK(z(ra.value, re.value, sae) < 4.0);
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(simulate_paths(small(0.0, 1.0, {1.0})), ConfigError);
  CHECK_THROWS_AS(simulate_paths(small(2.0, -1.0, {1.0})), ConfigError);
  CHECK_THROWS_AS(simulate_paths(small(2.0, 1.0, {})), ConfigError);
  CHECK_THROWS_AS(simulate_paths(small(2.0, 1.0, {2.0, 1.0})), ConfigError);
  CHECK_THROWS_AS(simulate_paths(small(2.0, 1.0, {-1.0})), ConfigError);
  CHECK_THROWS_AS(simulate_paths(small(2.0, 1.0, {1.0}, 1)), ConfigError);
  auto c = small(2.0, 1.0, {1.0});
  c.dt = 0.1;
  CHECK_THROWS_AS(simulate_paths(c), ConfigError);
  c.dt = 1e-3;
  c.eps_cut = 0.0;
  CHECK_THROWS_AS(simulate_paths(c), ConfigError);
}

TEST_CASE("decay report") {
  SdeConfig base;
  base.paths = 4;
  base.dt = 1e-2;
  CHECK_THROWS_AS(decay_report(2.0, {1.0, 4.0}, base), DomainError);
  CHECK_THROWS_AS(decay_report(2.0, {}, base), ConfigError);
  CHECK_THROWS_AS(decay_report(2.0, {1000.0}, base), PrecisionError);
  base.paths = 4000;
  const auto r = decay_report(2.0, {4.0, 8.0}, base);
  CHECK(r.lambda.size() == 2);
  CHECK(std::isfinite(r.fitted_c));
  for (std::size_t i = 0; i < 2; ++i) CHECK(r.ratio[i] == doctest::Approx(r.deviation[i] / r.envelope[i]));
}

TEST_CASE("continuity scan") {
  SdeConfig base;
  base.paths = 500;
  const auto one = continuity_scan({2.0}, 1.0, base);
  CHECK(one.passed);
  CHECK(one.difference.empty());
  CHECK(one.total_variation == 0.0);
  CHECK_THROWS_AS(continuity_scan({2.0, 2.5}, 1.0, base), ConfigError);
  const auto two = continuity_scan({2.0, 2.1}, 1.0, base);
  CHECK(two.difference.size() == 1);
  CHECK(two.budget.size() == 1);
}
