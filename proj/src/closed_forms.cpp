#include "sinebeta/closed_forms.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "sinebeta/errors.hpp"
#include "sinebeta/special.hpp"

namespace sinebeta {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inv4pi2 = 1.0 / (4.0 * pi * pi);

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw DomainError("lambda must be finite and nonnegative");
}

// e^{ix} - 1 - ix without cancellation
std::complex<double> expm1_minus_ix(double x) {
  if (std::abs(x) < 0.5) {
    const std::complex<double> ix(0.0, x);
    std::complex<double> term = ix, sum(0.0, 0.0);
    for (int m = 2; m < 30; ++m) {
      term *= ix / double(m);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  const double h = std::sin(0.5 * x);
  return {-2.0 * h * h, std::sin(x) - x};
}

}  // namespace

double sine2_rho2(double lambda) {
  check_lambda(lambda);
  if (lambda < 1e-4) {
    const double l2 = lambda * lambda;
    return inv4pi2 * l2 * (1.0 / 12.0 - l2 / 360.0);
  }
  const double x = 0.5 * lambda;
  const double sc = std::sin(x) / x;
  return inv4pi2 * (1.0 - sc * sc);
}

double sine4_rho2(double lambda) {
  check_lambda(lambda);
  if (lambda < 0.05) {
    const double m = lambda * lambda;
    const double p = 1.0 / 135 + m * (-2.0 / 4725 + m * (2.0 / 165375 + m * (-34.0 / 147349125 + m * 491.0 / 147496474125)));
    return inv4pi2 * m * m * p;
  }
  const double s = std::sin(lambda), c = std::cos(lambda);
  const double sc = s / lambda;
  const double dsc = (lambda * c - s) / (lambda * lambda);
  return inv4pi2 * (1.0 - sc * sc + dsc * sine_integral(lambda));
}

Beta4Q beta4_q2(double lambda) {
  if (!(lambda > 1e-3)) throw DomainError("beta4_q2 needs lambda > 1e-3");
  using cd = std::complex<double>;
  const cd I(0.0, 1.0);
  const double l = lambda, l2 = l * l, l3 = l2 * l;
  const cd eil = std::exp(I * l);
  const cd e2il = eil * eil;
  const double si = sine_integral(l);
  // 1 + 2il - e^{2il} = -(e^{2il} - 1 - 2il)
  const cd F = 3.0 * I * (-expm1_minus_ix(2.0 * l)) / (2.0 * l3);
  const cd G = -3.0 * I * eil * si / l2;
  const cd dF = -3.0 * (1.0 - e2il) / l3 - 3.0 * F / l;
  const cd dG = I * G - 3.0 * I * eil * std::sin(l) / l3 - 2.0 * G / l;
  Beta4Q out;
  out.q2 = F + G;
  out.dq2 = dF + dG;
  out.q1 = (l * out.dq2 + 4.0 * out.q2 - 2.0 * I * l * out.q2) / 4.0;
  return out;
}

double hp_delta1_density(double beta, double lambda, Delta1Form form) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive");
  check_lambda(lambda);
  if (form == Delta1Form::hypergeometric) {
    if (lambda == 0.0) return 0.0;
    const double pre = lambda * lambda / (4.0 * pi * (1.0 + 2.0 / beta) * (1.0 + 4.0 / beta));
    return pre * hyp1f2(1.0, 1.5 + 2.0 / beta, 2.0 + 2.0 / beta, -0.25 * lambda * lambda);
  }
  if (!(lambda > 0.0)) throw DomainError("integral form needs lambda > 0");

  using boost::math::quadrature::gauss_kronrod;
  using boost::math::quadrature::tanh_sinh;
  const double p = 4.0 / beta;
  double total = 0.0, err_total = 0.0;

  // integrate g over [0, upper], panels about a quarter period of the phase wide
  auto panels = [&](auto g, double upper, auto breakpoint) {
    double a = 0.0;
    for (int m = 1;; ++m) {
      const double b = std::min(upper, breakpoint(m));
      double err = 0.0;
      double part;
      if (a == 0.0) {
        tanh_sinh<double> ts;
        double l1 = 0.0;
        part = ts.integrate(g, a, b, 1e-14, &err, &l1);
      } else {
        part = gauss_kronrod<double, 31>::integrate(g, a, b, 12, 1e-14, &err);
      }
      total += part;
      err_total += std::abs(err);
      a = b;
      if (b >= upper) break;
    }
  };

  double scaled;  // lambda^{-4/beta} * int_0^lambda s^{4/beta-1} cos(lambda - s) ds
  if (beta <= 4.0) {
    auto g = [&](double s) { return std::pow(s, p - 1.0) * std::cos(lambda - s); };
    panels(g, lambda, [](int m) { return 0.5 * pi * m; });
    scaled = total * std::pow(lambda, -p);
  } else {
    // s = t^{beta/4} removes the endpoint singularity; the integrand becomes (beta/4) cos(lambda - t^{beta/4})
    const double q = beta / 4.0;
    auto g = [&](double t) { return std::cos(lambda - std::pow(t, q)); };
    panels(g, std::pow(lambda, p), [&](int m) { return std::pow(0.5 * pi * m, p); });
    scaled = q * total * std::pow(lambda, -p);
  }
  const double abs_err = err_total * std::pow(lambda, -p) * std::max(1.0, beta / 4.0);
  if (!(abs_err <= 1e-8) || !std::isfinite(scaled))
    throw QuadratureError("integral form: quadrature error estimate " + sci(abs_err) +
                          " at beta = " + std::to_string(beta) + ", lambda = " + std::to_string(lambda));
  return 1.0 / (2.0 * pi) - (2.0 / (beta * pi)) * scaled;
}

}  // namespace sinebeta
