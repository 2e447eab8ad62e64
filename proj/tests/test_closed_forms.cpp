#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "sinebeta/closed_forms.hpp"
#include "sinebeta/errors.hpp"
#include "sinebeta/series.hpp"

using namespace sinebeta;
using std::numbers::pi;

TEST_CASE("Sine_2 values") {
  CHECK(sine2_rho2(0.0) == 0.0);
  CHECK(std::abs(sine2_rho2(2 * pi) - 1 / (4 * pi * pi)) < 1e-16);
  CHECK(sine2_rho2(pi) == doctest::Approx(0.0150627).epsilon(1e-5));
  for (double l : {1e-6, 1e-5, 5e-5}) CHECK(sine2_rho2(l) == doctest::Approx(l * l / (48 * pi * pi)).epsilon(1e-8));
  for (double l : {0.3, 2.0, 11.0}) CHECK(std::abs(sine2_rho2(l) - hp_delta1_density(2.0, l) / (2 * pi)) < 1e-13);
}

TEST_CASE("Sine_4 against the series") {
  const auto c = compute_coefficients(2, 4.0, 40.0);
  for (double l = 0.0; l <= 40.0; l += 0.1) {
    const double s4 = sine4_rho2(l);
    CHECK(std::abs(s4 - sine_pair_corr_series(c, l)) <= 1e-9);
    CHECK(s4 >= -1e-12);
    CHECK(s4 <= 0.04);
    if (l >= 10.0) CHECK(std::abs(s4 - 1 / (4 * pi * pi)) <= 0.5 / l);
  }
  for (double l : {1e-3, 0.01, 0.049, 0.051})
    CHECK(sine4_rho2(l) == doctest::Approx(sine_pair_corr_series(c, l)).epsilon(1e-9));
  CHECK(sine4_rho2(1e-3) == doctest::Approx(std::pow(1e-3, 4) / (135 * 4 * pi * pi)).epsilon(1e-5));
}

TEST_CASE("beta = 4 second component") {
  const auto c = compute_coefficients(2, 4.0, 30.0);
  for (double l : {0.01, 0.1, 1.0, 6.0, 29.0}) {
    const auto b = beta4_q2(l);
    const auto d = q_derivative_series(c, l);
    CHECK(std::abs(b.q2 - q_series(c, l).q[1]) < 1e-10);
    CHECK(std::abs(b.dq2 - d[1]) < 1e-8);
  }
  CHECK_THROWS_AS(beta4_q2(1e-3), DomainError);
}

TEST_CASE("delta = 1 density forms") {
  for (double beta : {0.5, 1.0, 2.0, 3.0, 4.0, 6.5, 10.0, 40.0})
    for (double l : {0.1, 1.0, pi, 7.0, 10.0, 30.0, 50.0}) {
      const double h = hp_delta1_density(beta, l, Delta1Form::hypergeometric);
      const double g = hp_delta1_density(beta, l, Delta1Form::integral);
      CHECK(std::abs(h - g) <= 1e-9);
    }
  CHECK(hp_delta1_density(2.0, 0.0) == 0.0);
}

TEST_CASE("delta = 1 density against the series at n = 1") {
  for (double beta : {0.8, 2.0, 3.7, 9.0}) {
    const auto c = compute_coefficients(1, beta, 15.0);
    for (double l : {0.25, 2.0, 8.0, 15.0})
      CHECK(std::abs(hp_delta1_density(beta, l) - hp_density_series(c, l)) <= 1e-11);
  }
}

TEST_CASE("delta = 1 density by direct quadrature") {
  // Re q(l) = (a/l) int_0^l (1 - u/l)^{a-1} cos u du, a = 4/beta
  using boost::math::quadrature::gauss_kronrod;
  for (double beta : {1.0, 2.0, 3.0}) {
    const double a = 4.0 / beta;
    for (double l : {0.5, 3.0}) {
      auto re = [&](double u) { return a / l * std::pow(1 - u / l, a - 1) * std::cos(u); };
      const double req = gauss_kronrod<double, 61>::integrate(re, 0.0, l, 15, 1e-14);
      const double rho = (1 - req) / (2 * pi);
      CHECK(std::abs(hp_delta1_density(beta, l) - rho) < 1e-10);
    }
  }
}

TEST_CASE("closed form errors") {
  CHECK_THROWS_AS(sine2_rho2(-1.0), DomainError);
  CHECK_THROWS_AS(sine4_rho2(std::nan("")), DomainError);
  CHECK_THROWS_AS(hp_delta1_density(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(hp_delta1_density(2.0, 0.0, Delta1Form::integral), DomainError);
}
