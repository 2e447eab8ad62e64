#include "sinebeta/special.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "mp.hpp"
#include "sinebeta/errors.hpp"

namespace sinebeta {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void check_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw DomainError("delta must be positive and finite, got " + std::to_string(delta));
}

bool nonpositive_integer(double b) { return b <= 0.0 && b == std::floor(b); }

}  // namespace

CoeffSeq pochhammer_ratio_seq(double delta, int k_max) {
  check_delta(delta);
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  CoeffSeq out;
  out.delta = delta;
  out.values.resize(k_max);
  double c = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    c *= (-delta + (k - 1)) / (delta + k);
    out.values[k - 1] = c;
  }
  return out;
}

double fit_coefficient_constant(const CoeffSeq& c, int k_fit) {
  double best = 0.0;
  const int kk = std::min<int>(k_fit, static_cast<int>(c.K()));
  for (int k = 1; k <= kk; ++k)
    best = std::max(best, std::abs(c[k]) * std::pow(double(k), 1.0 + 2.0 * c.delta));
  return best;
}

double theta_density(double delta, double theta) {
  check_delta(delta);
  if (!(theta >= 0.0 && theta < two_pi)) throw DomainError("theta outside [0, 2pi)");
  const double lnorm = 2.0 * std::lgamma(1.0 + delta) - std::lgamma(1.0 + 2.0 * delta);
  // 2 - 2cos = 4 sin^2(theta/2), no cancellation near 0
  const double s = 2.0 * std::sin(0.5 * theta);
  if (s == 0.0) return 0.0;
  return std::exp(lnorm + 2.0 * delta * std::log(std::abs(s))) / two_pi;
}

double theta_fourier_coeff(double delta, int k) {
  check_delta(delta);
  if (k < 0) throw DomainError("Fourier index must be nonnegative");
  if (k == 0) return 1.0 / two_pi;
  return pochhammer_ratio_seq(delta, k)[k] / two_pi;
}

double theta_cdf_series(double delta, double x, int k_max) {
  const auto c = pochhammer_ratio_seq(delta, k_max);
  double sum = 0.0;
  for (int k = k_max; k >= 1; --k) sum += c[k] * std::sin(k * x) / k;
  return x / two_pi + sum / std::numbers::pi;
}

double sine_integral(double x) {
  if (!(x >= 0.0) || x > 1e4) throw DomainError("sine_integral needs 0 <= x <= 1e4");
  if (x == 0.0) return 0.0;
  if (x <= 4.0) {
    const double x2 = x * x;
    double term = x;  // x^{2m+1}/(2m+1)!
    double sum = x;
    for (int m = 1; m < 40; ++m) {
      term *= -x2 / ((2.0 * m) * (2.0 * m + 1.0));
      const double t = term / (2.0 * m + 1.0);
      sum += t;
      if (std::abs(t) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  // Lentz continued fraction for E1(ix)
  using cd = std::complex<double>;
  const double tiny = 1e-300;
  cd b(1.0, x);
  cd c(1.0 / tiny, 0.0);
  cd d = 1.0 / b;
  cd h = d;
  for (int i = 2; i < 1000; ++i) {
    const double a = -double(i - 1) * double(i - 1);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cd del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16) {
      h *= cd(std::cos(x), -std::sin(x));
      return 0.5 * std::numbers::pi + h.imag();
    }
  }
  throw ConvergenceError("sine_integral continued fraction did not converge at x = " +
                         std::to_string(x));
}

namespace {

double hyp1f2_mp(double a, double b1, double b2, double z, unsigned digits) {
  using detail::mp;
  detail::MpScope scope(static_cast<unsigned>(digits * 3.3219280948873623) + 8);
  mp term(1), sum(1);
  const mp zz(z);
  const mp eps = boost::multiprecision::pow(mp(10), -int(digits) + 2);
  int small = 0;
  for (int m = 0; m < 100000; ++m) {
    term *= (mp(a) + m) / ((mp(b1) + m) * (mp(b2) + m)) * zz / (m + 1);
    sum += term;
    if (abs(term) < eps * abs(sum)) {
      if (++small == 3) return sum.convert_to<double>();
    } else {
      small = 0;
    }
  }
  throw ConvergenceError("hyp1f2 exceeded 1e5 terms");
}

}  // namespace

double hyp1f2(double a, double b1, double b2, double z) {
  if (nonpositive_integer(b1) || nonpositive_integer(b2))
    throw DomainError("hyp1f2 lower parameter is a nonpositive integer");
  if (!(std::abs(z) <= 1e4)) throw DomainError("hyp1f2 needs |z| <= 1e4");
  double term = 1.0, sum = 1.0, abs_sum = 1.0, biggest = 1.0;
  int small = 0;
  int m = 0;
  for (; m < 100000; ++m) {
    term *= (a + m) / ((b1 + m) * (b2 + m)) * z / (m + 1);
    sum += term;
    abs_sum += std::abs(term);
    biggest = std::max(biggest, std::abs(term));
    if (std::abs(term) < 1e-16 * abs_sum) {
      if (++small == 3) break;
    } else {
      small = 0;
    }
  }
  if (m == 100000) throw ConvergenceError("hyp1f2 exceeded 1e5 terms");
  // alternating terms much larger than the result: resum with enough digits
  if (biggest > 1e4 * std::abs(sum)) {
    double scale = sum != 0.0 ? biggest / std::abs(sum) : biggest * 1e16;
    for (int attempt = 0; attempt < 4; ++attempt) {
      const unsigned digits = 24u + static_cast<unsigned>(std::ceil(std::log10(scale)));
      const double r = hyp1f2_mp(a, b1, b2, z, digits);
      const double need = r != 0.0 ? biggest / std::abs(r) : scale * 1e16;
      if (need <= scale * 10.0) return r;
      scale = need;
    }
    throw ConvergenceError("hyp1f2 could not resolve cancellation");
  }
  return sum;
}

}  // namespace sinebeta
