#include "sinebeta/series.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mp.hpp"
#include "sinebeta/errors.hpp"
#include "sinebeta/linalg.hpp"
#include "sinebeta/tridiagonal.hpp"

namespace sinebeta {

using detail::mp;
using detail::MpScope;

struct SeriesCoefficients::Impl {
  int n = 0;
  double beta = 0.0;
  int K = 0;
  double lambda_max = 0.0;
  double tol = 0.0;
  double tail = 0.0;
  double kappa = 0.0;
  unsigned bits = 0;
  SystemMatrices sys;
  std::vector<std::vector<mp>> r;     // r_0..r_K
  std::vector<std::vector<mp>> even;  // (-1)^j r_{2j}
  std::vector<std::vector<mp>> odd;   // (-1)^j r_{2j+1}
  std::vector<mp> w;                  // (-1)^j v.r_{2j} = v.s_{2j}
};

namespace {

constexpr double pi = std::numbers::pi;

template <class T>
std::vector<T> next_r(const SystemMatrices& s, double beta, int k, const std::vector<T>& prev) {
  const int n = s.n;
  const T scale = T(4) / T(beta);
  std::vector<T> sub(n - 1), diag(n), super(n - 1), rhs(n);
  for (int i = 0; i < n; ++i) {
    diag[i] = T(k) - scale * T(s.A_diag[i]);
    rhs[i] = T(s.B[i]) * prev[i];
    if (i + 1 < n) {
      sub[i] = -scale * T(s.A_sub[i]);
      super[i] = -scale * T(s.A_super[i]);
    }
  }
  return solve_tridiagonal(sub, diag, super, rhs);
}

template <class T>
T norm2(const std::vector<T>& x) {
  using std::sqrt;
  T s = 0;
  for (const auto& xi : x) s += xi * xi;
  return sqrt(s);
}

// log of sqrt(n) kappa^k prod_{j<=k} n/(j + 4n/beta) lambda^k
struct LogBound {
  int n;
  double beta;
  double kappa;
  double lambda;

  double operator()(int k) const {
    double s = 0.5 * std::log(double(n)) + k * std::log(kappa * lambda);
    for (int j = 1; j <= k; ++j) s += std::log(n / (j + 4.0 * n / beta));
    return s;
  }
};

double fit_kappa(const SystemMatrices& sys, double beta) {
  const int n = sys.n;
  std::vector<double> r = sys.f;
  double logP = 0.0, best = 0.0;
  for (int k = 1; k <= 10; ++k) {
    r = next_r<double>(sys, beta, k, r);
    logP += std::log(n / (k + 4.0 * n / beta));
    const double nr = norm2(r);
    if (nr > 0.0)
      best = std::max(best, std::exp((std::log(nr) - 0.5 * std::log(double(n)) - logP) / k));
  }
  return best > 0.0 ? best : 1.0;
}

void check_lambda(const SeriesCoefficients::Impl& c, double lambda) {
  if (!(std::abs(lambda) <= c.lambda_max * (1.0 + 1e-12)))
    throw RangeError("lambda = " + std::to_string(lambda) + " exceeds the series range " +
                     std::to_string(c.lambda_max));
}

mp horner(const std::vector<std::vector<mp>>& coef, int i, const mp& mu) {
  mp acc = 0;
  for (std::size_t j = coef.size(); j-- > 0;) acc = acc * mu + coef[j][i];
  return acc;
}

}  // namespace

int SeriesCoefficients::n() const { return impl_->n; }
double SeriesCoefficients::beta() const { return impl_->beta; }
int SeriesCoefficients::K() const { return impl_->K; }
double SeriesCoefficients::lambda_max() const { return impl_->lambda_max; }
double SeriesCoefficients::tol() const { return impl_->tol; }
double SeriesCoefficients::tail_bound() const { return impl_->tail; }
double SeriesCoefficients::kappa() const { return impl_->kappa; }
unsigned SeriesCoefficients::precision_bits() const { return impl_->bits; }

std::vector<std::complex<double>> SeriesCoefficients::s(int k) const {
  if (k < 0 || k > impl_->K) throw RangeError("coefficient index out of range");
  MpScope scope(impl_->bits);
  std::vector<std::complex<double>> out(impl_->n);
  for (int i = 0; i < impl_->n; ++i) {
    const double x = impl_->r[k][i].convert_to<double>();
    switch (k % 4) {
      case 0: out[i] = {x, 0.0}; break;
      case 1: out[i] = {0.0, x}; break;
      case 2: out[i] = {-x, 0.0}; break;
      default: out[i] = {0.0, -x}; break;
    }
  }
  return out;
}

double SeriesCoefficients::v_dot_s_even(int j) const {
  if (j < 0 || j >= int(impl_->w.size())) throw RangeError("coefficient index out of range");
  MpScope scope(impl_->bits);
  return impl_->w[j].convert_to<double>();
}

SeriesCoefficients compute_coefficients(int n, double beta, double lambda_max, double tol) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive");
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) throw DomainError("lambda_max must be positive");
  if (!(tol >= 1e-15)) throw DomainError("tol must be at least 1e-15");

  auto c = std::make_shared<SeriesCoefficients::Impl>();
  c->n = n;
  c->beta = beta;
  c->lambda_max = lambda_max;
  c->tol = tol;
  c->sys = build_system(n);
  const auto& sys = c->sys;

  double kappa = 2.0 * fit_kappa(sys, beta);
  for (int attempt = 0; attempt < 8; ++attempt, kappa *= 2.0) {
    const LogBound lb{n, beta, kappa, lambda_max};
    // stop once the bound decays geometrically with ratio <= 1/2 below tol/2
    int K = 0;
    double maxlog = lb(0);
    const double logtol = std::log(0.5 * tol);
    for (;; ++K) {
      if (K > 200000) throw ConvergenceError("series order exceeds 200000");
      maxlog = std::max(maxlog, lb(K));
      const double ratio = kappa * n * lambda_max / (K + 1 + 4.0 * n / beta);
      if (ratio <= 0.5 && lb(K + 1) < logtol) break;
    }
    const double need = (maxlog + std::log(K + 1.0) - std::log(tol)) / std::log(2.0) + 16.0;
    const unsigned bits = std::max(64u, static_cast<unsigned>(std::ceil(need)));

    MpScope scope(bits);
    std::vector<std::vector<mp>> r(K + 1);

    // s_0 from the linear system must reproduce f
    {
      std::vector<mp> sub(n - 1), diag(n), super(n - 1), rhs(n, mp(0));
      for (int i = 0; i < n; ++i) {
        diag[i] = sys.A_diag[i];
        if (i + 1 < n) {
          sub[i] = sys.A_sub[i];
          super[i] = sys.A_super[i];
        }
      }
      rhs[0] = mp(-(n + 1)) / 2;
      const auto s0 = solve_tridiagonal(sub, diag, super, rhs);
      const mp slack = ldexp(mp(1), -int(bits) + 16);
      for (int i = 0; i < n; ++i)
        if (abs(s0[i] - 1) > slack)
          throw ConsistencyError("-(n+1)/2 A^{-1} e differs from f at component " + std::to_string(i));
      r[0].assign(n, mp(1));
    }

    bool bound_ok = true;
    const LogBound lb1{n, beta, kappa, 1.0};
    for (int k = 1; k <= K && bound_ok; ++k) {
      r[k] = next_r<mp>(sys, beta, k, r[k - 1]);
      const mp nr = norm2(r[k]);
      if (nr > 0 && log(nr).convert_to<double>() > lb1(k) + 1e-9) bound_ok = false;
    }
    if (!bound_ok) continue;

    c->K = K;
    c->kappa = kappa;
    c->bits = bits;
    c->tail = 2.0 * std::exp(lb(K + 1));
    c->even.clear();
    c->odd.clear();
    for (int k = 0; k <= K; ++k) {
      std::vector<mp> x = r[k];
      if ((k / 2) % 2)
        for (auto& xi : x) xi = -xi;
      (k % 2 ? c->odd : c->even).push_back(std::move(x));
    }
    std::vector<mp> v(n);
    mp ratio = 1;
    for (int k = 1; k <= n; ++k) {
      ratio = ratio * (n - k + 1) / (n + k);
      v[k - 1] = k % 2 ? -ratio : ratio;
    }
    const mp zero_slack = ldexp(mp(1), -int(bits) / 2);
    for (std::size_t j = 0; j < c->even.size(); ++j) {
      mp s = 0;
      for (int i = 0; i < n; ++i) s += v[i] * c->even[j][i];
      // v . r_{2j} vanishes identically for 1 <= j < n
      if (j >= 1 && int(j) < n) {
        if (abs(s) > zero_slack * max(mp(1), norm2(c->even[j])))
          throw ConsistencyError("v . r_" + std::to_string(2 * j) + " does not vanish");
        s = 0;
      }
      c->w.push_back(s);
    }
    c->r = std::move(r);
    return SeriesCoefficients(std::move(c));
  }
  throw ConvergenceError("coefficient norm bound could not be established");
}

QValue q_series(const SeriesCoefficients& coeffs, double lambda) {
  const auto& c = coeffs.impl();
  check_lambda(c, lambda);
  QValue out;
  out.lambda = lambda;
  out.tail_bound = c.tail;
  out.q.resize(c.n);
  MpScope scope(c.bits);
  const mp lam(lambda);
  const mp mu = lam * lam;
  for (int i = 0; i < c.n; ++i) {
    const mp re = horner(c.even, i, mu);
    const mp im = lam * horner(c.odd, i, mu);
    out.q[i] = {re.convert_to<double>(), im.convert_to<double>()};
  }
  return out;
}

std::vector<std::complex<double>> q_derivative_series(const SeriesCoefficients& coeffs, double lambda) {
  const auto& c = coeffs.impl();
  check_lambda(c, lambda);
  std::vector<std::complex<double>> out(c.n);
  MpScope scope(c.bits);
  const mp lam(lambda);
  const mp mu = lam * lam;
  for (int i = 0; i < c.n; ++i) {
    // d/dlambda of sum_j e_j mu^j = sum_j 2j e_j lambda^{2j-1}
    mp re = 0;
    for (std::size_t j = c.even.size(); j-- > 1;) re = re * mu + 2 * int(j) * c.even[j][i];
    re *= lam;
    mp im = 0;
    for (std::size_t j = c.odd.size(); j-- > 0;) im = im * mu + (2 * int(j) + 1) * c.odd[j][i];
    out[i] = {re.convert_to<double>(), im.convert_to<double>()};
  }
  return out;
}

double hp_density_series(const SeriesCoefficients& coeffs, double lambda) {
  const auto& c = coeffs.impl();
  check_lambda(c, lambda);
  double via_q, via_w;
  {
    MpScope scope(c.bits);
    const mp lam(lambda);
    const mp mu = lam * lam;
    mp vq = 0;
    for (int i = 0; i < c.n; ++i) vq += c.sys.v[i] * horner(c.even, i, mu);
    via_q = (1 + 2 * vq).convert_to<double>();
    mp acc = 0;
    for (std::size_t j = c.w.size(); j-- > 1;) acc = acc * mu + c.w[j];
    via_w = (2 * acc * mu).convert_to<double>();
  }
  if (std::abs(via_q - via_w) / (2.0 * pi) > 1e-12)
    throw ConsistencyError("density forms disagree at lambda = " + std::to_string(lambda));
  return via_w / (2.0 * pi);
}

double sine_pair_corr_series(const SeriesCoefficients& coeffs, double lambda) {
  const auto& c = coeffs.impl();
  if (std::abs(c.beta - 2.0 * c.n) > 1e-12)
    throw DomainError("pair correlation series needs beta = 2n");
  check_lambda(c, lambda);
  double sum;
  {
    MpScope scope(c.bits);
    const mp lam(lambda);
    const mp mu = lam * lam;
    mp acc = 0;
    for (std::size_t j = c.w.size(); j-- > 1;) acc = acc * mu + c.w[j];
    sum = (acc * mu).convert_to<double>();
  }
  const double rho2 = sum / (2.0 * pi * pi);
  const double palm = hp_density_series(coeffs, lambda) / (2.0 * pi);
  if (std::abs(rho2 - palm) > 1e-12)
    throw ConsistencyError("pair correlation and Palm density disagree at lambda = " +
                           std::to_string(lambda));
  return rho2;
}

double sine_pair_corr_series(int n, double lambda, double tol) {
  const auto c = compute_coefficients(n, 2.0 * n, std::max(std::abs(lambda), 1e-3), tol);
  return sine_pair_corr_series(c, lambda);
}

double small_lambda_constant(int n, double beta) {
  if (n < 1) throw DomainError("n must be positive");
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  // C(2n,n)^{-1} (beta/2)^{2n} / (1+beta/2)^{(2n)}, accumulated factor by factor
  const double h = 0.5 * beta;
  double x = 1.0;
  for (int j = 1; j <= n; ++j) x *= double(j) / double(n + j);
  for (int j = 0; j < 2 * n; ++j) x *= h / (1.0 + h + j);
  return x / (2.0 * pi);
}

double cor_constant(int n) {
  if (n < 1) throw DomainError("n must be positive");
  long double x = 1.0L;
  for (int j = 1; j <= n; ++j) {
    const long double nj = n + j;
    x *= static_cast<long double>(n) * n * j / (nj * nj * (2 * n + j));
  }
  return static_cast<double>(x);
}

}  // namespace sinebeta
