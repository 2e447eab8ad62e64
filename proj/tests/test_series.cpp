#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "doctest.h"
#include "sinebeta/closed_forms.hpp"
#include "sinebeta/errors.hpp"
#include "sinebeta/linalg.hpp"
#include "sinebeta/series.hpp"

using namespace sinebeta;
using cd = std::complex<double>;
using std::numbers::pi;

namespace {

// 2 (1 + i l - e^{il}) / l^2, the n = 1, beta = 2 solution
cd q_n1_beta2(double l) {
  const cd I(0, 1);
  return 2.0 * (1.0 + I * l - std::exp(I * l)) / (l * l);
}

double ode_residual(const SeriesCoefficients& c, double l) {
  const auto s = build_system(c.n());
  const auto q = q_series(c, l).q;
  const auto dq = q_derivative_series(c, l);
  const cd I(0, 1);
  double worst = 0.0;
  for (int k = 0; k < c.n(); ++k) {
    cd rhs = I * (c.beta() / 4) * l * s.B[k] * q[k];
    for (int j = 0; j < c.n(); ++j) rhs += s.A(k, j) * q[j];
    if (k == 0) rhs += (c.n() + 1) / 2.0;
    worst = std::max(worst, std::abs(c.beta() / 4 * l * dq[k] - rhs));
  }
  return worst;
}

}  // namespace

TEST_CASE("coefficients for n = 1, beta = 2") {
  const auto c = compute_coefficients(1, 2.0, 10.0);
  double fact = 2.0;  // (k+2)!
  for (int k = 0; k <= 20; ++k) {
    if (k > 0) fact *= (k + 2);
    cd expect = 2.0 / fact * std::pow(cd(0, 1), k);
    const cd got = c.s(k)[0];
    CHECK(std::abs(got - expect) <= 1e-15 * std::abs(expect));
  }
  CHECK(c.s(2)[0].real() == doctest::Approx(-1.0 / 12).epsilon(1e-15));
}

TEST_CASE("first coefficient for n = 2, beta = 4 by a dense solve") {
  const auto c = compute_coefficients(2, 4.0, 5.0);
  Eigen::Matrix2d M;
  M << 2.0, 0.5, -4.0, 5.0;  // I - A_2
  const Eigen::Vector2d x = M.lu().solve(Eigen::Vector2d(1.0, 2.0));
  const auto s1 = c.s(1);
  CHECK(s1[0].real() == 0.0);
  CHECK(s1[1].real() == 0.0);
  CHECK(s1[0].imag() == doctest::Approx(x(0)).epsilon(1e-15));
  CHECK(s1[1].imag() == doctest::Approx(x(1)).epsilon(1e-15));
  CHECK(s1[1].imag() == doctest::Approx(2.0 / 3).epsilon(1e-15));
}

TEST_CASE("parity and norm bound") {
  for (int n = 1; n <= 6; ++n)
    for (double beta : {2.0 * n, 2.0 * n - 0.5, 2.0 * n + 0.5, 1.0}) {
      const auto c = compute_coefficients(n, beta, 20.0);
      double logP = 0.0;
      for (int k = 0; k <= c.K(); ++k) {
        if (k > 0) logP += std::log(n / (k + 4.0 * n / beta));
        const auto s = c.s(k);
        double nrm = 0.0;
        for (const auto& z : s) {
          if (k % 2 == 0) CHECK(z.imag() == 0.0);
          else CHECK(z.real() == 0.0);
          nrm += std::norm(z);
        }
        nrm = std::sqrt(nrm);
        if (nrm > 0.0 && std::isfinite(std::log(nrm)))
          CHECK(std::log(nrm) <= 0.5 * std::log(n) + k * std::log(c.kappa()) + logP + 1e-9);
      }
      CHECK(c.tail_bound() < c.tol());
    }
}

TEST_CASE("q from the series") {
  const auto c1 = compute_coefficients(1, 2.0, 30.0);
  auto q = q_series(c1, 0.0);
  CHECK(q.q[0] == cd(1.0, 0.0));
  q = q_series(c1, pi);
  CHECK(std::abs(q.q[0].real() - 4.0 / (pi * pi)) < 1e-14);
  for (double l : {0.3, 1.0, 5.0, 20.0, 30.0}) CHECK(std::abs(q_series(c1, l).q[0] - q_n1_beta2(l)) < 1e-13);

  const auto c2 = compute_coefficients(2, 4.0, 30.0);
  for (double l : {0.01, 1.0, 7.0, 25.0}) {
    const auto b = beta4_q2(l);
    const auto qs = q_series(c2, l);
    CHECK(std::abs(qs.q[1] - b.q2) < 1e-10);
    CHECK(std::abs(qs.q[0] - b.q1) < 1e-10);
  }
  CHECK(std::abs(q_derivative_series(c2, 0.0)[1] - cd(0.0, 2.0 / 3)) < 1e-15);

  for (int n = 1; n <= 6; ++n) {
    const auto c = compute_coefficients(n, 2.0 * n + 0.5, 30.0);
    for (double l = 0.0; l <= 30.0; l += 0.75)
      for (const auto& z : q_series(c, l).q) CHECK(std::abs(z) <= 1.0 + 1e-12);
  }
  CHECK_THROWS_AS(q_series(c1, 30.5), RangeError);
  CHECK_THROWS_AS(compute_coefficients(1, 2.0, 1.0, 1e-16), DomainError);
  CHECK_THROWS_AS(compute_coefficients(1, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(compute_coefficients(0, 2.0, 1.0), SizeError);
}

TEST_CASE("ODE residual of the series") {
  for (int n = 1; n <= 6; ++n)
    for (double beta : {2.0 * n, 3.3}) {
      const auto c = compute_coefficients(n, beta, 30.0);
      for (double l : {0.0, 0.5, 3.0, 12.0, 29.0}) CHECK(ode_residual(c, l) <= 1e-8);
    }
}

TEST_CASE("density from the series") {
  const auto c1 = compute_coefficients(1, 2.0, 20.0);
  CHECK(hp_density_series(c1, 0.0) == 0.0);
  for (double l : {0.5, pi, 9.0}) {
    const double s = std::sin(l / 2) / (l / 2);
    CHECK(std::abs(hp_density_series(c1, l) - (1 - s * s) / (2 * pi)) < 1e-14);
  }
  for (double beta : {0.7, 2.0, 5.0, 11.0}) {
    const auto c = compute_coefficients(1, beta, 1.0);
    const double l = 1e-3;
    const double lead = l * l / (4 * pi * (1 + 2 / beta) * (1 + 4 / beta));
    CHECK(hp_density_series(c, l) == doctest::Approx(lead).epsilon(1e-5));
  }
  for (int n = 1; n <= 6; ++n)
    for (double beta : {2.0 * n, 2.0 * n - 0.5, 2.0 * n + 0.5}) {
      const auto c = compute_coefficients(n, beta, 30.0);
      for (double l = 0.0; l <= 30.0; l += 0.25) CHECK(hp_density_series(c, l) >= -1e-10);
    }
}

TEST_CASE("truncation self-consistency") {
  for (int n : {1, 3}) {
    const auto a = compute_coefficients(n, 2.0 * n, 15.0, 1e-13);
    const auto b = compute_coefficients(n, 2.0 * n, 30.0, 1e-15);
    CHECK(b.K() > a.K());
    for (double l : {1.0, 7.0, 15.0}) {
      const auto qa = q_series(a, l).q, qb = q_series(b, l).q;
      for (int k = 0; k < n; ++k) CHECK(std::abs(qa[k] - qb[k]) < 1e-13);
    }
  }
}

TEST_CASE("Sine_{2n} pair correlation") {
  CHECK(std::abs(sine_pair_corr_series(1, 2 * pi) - 1 / (4 * pi * pi)) < 1e-15);
  CHECK(sine_pair_corr_series(1, pi) == doctest::Approx(0.0150627).epsilon(1e-5));
  CHECK(std::abs(sine_pair_corr_series(1, pi) - (1 - 4 / (pi * pi)) / (4 * pi * pi)) < 1e-15);
  const double c2 = 16.0 * 8.0 / (24.0 * 720.0);
  const double lead = c2 * 1e-4 / (4 * pi * pi);
  CHECK(std::abs(sine_pair_corr_series(2, 0.1) / lead - 1) < 1e-3);
  const auto c = compute_coefficients(2, 3.0, 2.0);
  CHECK_THROWS_AS(sine_pair_corr_series(c, 1.0), DomainError);
}

TEST_CASE("small-lambda constants") {
  CHECK(small_lambda_constant(1, 2.0) == doctest::Approx(1 / (24 * pi)).epsilon(1e-15));
  CHECK(small_lambda_constant(1, 4.0) == doctest::Approx(1 / (12 * pi)).epsilon(1e-15));
  CHECK(cor_constant(1) == doctest::Approx(1.0 / 12).epsilon(1e-15));
  CHECK(cor_constant(2) == doctest::Approx(16.0 * 8 / (24.0 * 720)).epsilon(1e-15));
  // n^{2n} (n!)^3 / ((2n)! (3n)!) by lgamma
  for (int n = 1; n <= 30; ++n) {
    const double lg = 2 * n * std::log(n) + 3 * std::lgamma(n + 1) - std::lgamma(2 * n + 1) - std::lgamma(3 * n + 1);
    CHECK(cor_constant(n) == doctest::Approx(std::exp(lg)).epsilon(1e-11));
    CHECK(small_lambda_constant(n, 2.0 * n) == doctest::Approx(cor_constant(n) / (2 * pi)).epsilon(1e-13));
  }
  // leading coefficient of the density
  for (int n = 1; n <= 4; ++n)
    for (double beta : {1.5, 2.0 * n, 7.0}) {
      const auto c = compute_coefficients(n, beta, 1.0);
      const double l = 1e-3;
      CHECK(hp_density_series(c, l) / std::pow(l, 2 * n) ==
            doctest::Approx(small_lambda_constant(n, beta)).epsilon(1e-4));
    }
}
