#include "sinebeta/linalg.hpp"

#include <cmath>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "sinebeta/errors.hpp"

namespace sinebeta {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

void check_size(int n, int hi, const char* what) {
  if (n < 1 || n > hi)
    throw SizeError(std::string(what) + ": n must lie in [1, " + std::to_string(hi) +
                    "], got " + std::to_string(n));
}

cpp_int binom(int a, int b) {
  if (b < 0 || a < 0 || b > a) return 0;
  cpp_int r = 1;
  for (int j = 1; j <= b; ++j) r = r * (a - b + j) / j;
  return r;
}

cpp_int factorial(int m) {
  cpp_int r = 1;
  for (int j = 2; j <= m; ++j) r *= j;
  return r;
}

template <class T>
Matrix<T> make_A(int n) {
  Matrix<T> A(n, n);
  for (int k = 1; k <= n; ++k) {
    A(k - 1, k - 1) = T(-k * k);
    if (k > 1) A(k - 1, k - 2) = T(k * (k + n)) / 2;
    if (k < n) A(k - 1, k) = T(k * (k - n)) / 2;
  }
  return A;
}

template <class T>
std::vector<T> make_v(int n) {
  std::vector<T> v(n);
  T ratio = 1;  // C(2n, n+k) / C(2n, n)
  for (int k = 1; k <= n; ++k) {
    ratio = ratio * T(n - k + 1) / T(n + k);
    v[k - 1] = (k % 2 ? -ratio : ratio);
  }
  return v;
}

template <class T>
std::vector<T> mat_vec(const Matrix<T>& M, const std::vector<T>& x) {
  std::vector<T> y(M.rows(), T(0));
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) y[i] += M(i, j) * x[j];
  return y;
}

template <class T>
std::vector<T> powB_f(int n, int ell) {
  std::vector<T> y(n);
  for (int k = 1; k <= n; ++k) {
    T p = 1;
    for (int j = 0; j < ell; ++j) p *= k;
    y[k - 1] = p;
  }
  return y;
}

std::string str(const cpp_rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace

SystemMatrices build_system(int n) {
  check_size(n, 64, "build_system");
  SystemMatrices s;
  s.n = n;
  s.A = make_A<double>(n);
  s.A_diag.resize(n);
  s.A_sub.resize(n - 1);
  s.A_super.resize(n - 1);
  for (int i = 0; i < n; ++i) {
    s.A_diag[i] = s.A(i, i);
    if (i + 1 < n) {
      s.A_super[i] = s.A(i, i + 1);
      s.A_sub[i] = s.A(i + 1, i);
    }
  }
  s.B.resize(n);
  for (int k = 1; k <= n; ++k) s.B[k - 1] = k;
  s.e.assign(n, 0.0);
  s.e[0] = 1.0;
  s.f.assign(n, 1.0);
  s.v = make_v<double>(n);
  return s;
}

std::vector<double> eigenvalues_A(int n) {
  check_size(n, 64, "eigenvalues_A");
  std::vector<double> g(n);
  for (int k = 1; k <= n; ++k) g[k - 1] = 0.5 * k * (k - 1) - 0.5 * n * (n + 1);
  return g;
}

Matrix<double> involution_T(int n) {
  check_size(n, 30, "involution_T");
  Matrix<double> T(n, n);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= a; ++b)
      T(a - 1, b - 1) = binom(a, b).convert_to<double>() * (b % 2 ? -1.0 : 1.0);
  return T;
}

IdentityReport identity_report(int n) {
  check_size(n, 30, "identity_report");
  IdentityReport rep;
  rep.n = n;
  auto add = [&](std::string name, int idx, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), idx, ok, std::move(detail)});
  };

  const auto A = make_A<cpp_rational>(n);
  const auto v = make_v<cpp_rational>(n);
  const auto Ad = make_A<double>(n);
  const auto vd = make_v<double>(n);

  // A f = -(n+1)/2 e
  {
    const auto Af = mat_vec(A, powB_f<cpp_rational>(n, 0));
    bool ok = Af[0] == cpp_rational(-(n + 1), 2);
    for (int k = 1; k < n; ++k) ok = ok && Af[k] == 0;
    add("A_f", 0, ok, "A f = " + str(Af[0]) + " e");
  }

  // v.f = -1/2
  {
    cpp_rational s = 0;
    for (int k = 0; k < n; ++k) s += v[k];
    add("v_dot_f", 0, s == cpp_rational(-1, 2), "v.f = " + str(s));
  }

  // A B^l f expanded in the B^m f basis
  for (int ell = 1; ell <= 2 * n; ++ell) {
    const auto lhs = mat_vec(A, powB_f<cpp_rational>(n, ell));
    std::vector<cpp_rational> rhs(n, cpp_rational(0));
    for (int j = 0; j <= (ell - 1) / 2; ++j) {
      const cpp_rational coef = cpp_rational(binom(ell, 2 * j + 2)) - n * cpp_rational(binom(ell, 2 * j + 1));
      const auto b = powB_f<cpp_rational>(n, ell - 2 * j);
      for (int k = 0; k < n; ++k) rhs[k] += coef * b[k];
    }
    add("A_Bl_f", ell, lhs == rhs, lhs == rhs ? "exact" : "mismatch");
  }

  // v.B^{2j} f
  for (int j = 1; j <= n; ++j) {
    const auto b = powB_f<cpp_rational>(n, 2 * j);
    cpp_rational s = 0;
    for (int k = 0; k < n; ++k) s += v[k] * b[k];
    cpp_rational expect = 0;
    if (j == n) {
      expect = cpp_rational(factorial(2 * n), 2 * binom(2 * n, n));
      if (n % 2) expect = -expect;
    }
    add("v_B2j_f", j, s == expect, "value " + str(s) + ", expected " + str(expect));
  }

  // T is an involution and conjugates A to an upper bidiagonal matrix
  {
    Matrix<cpp_rational> T(n, n);
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= a; ++b) T(a - 1, b - 1) = cpp_rational(binom(a, b) * (b % 2 ? -1 : 1));
    add("T_involution", 0, T * T == Matrix<cpp_rational>::identity(n), "T T = I");
    const auto TAT = T * A * T;
    Matrix<cpp_rational> expect(n, n);
    for (int k = 1; k <= n; ++k) {
      expect(k - 1, k - 1) = cpp_rational(k * (k - 1), 2) - k * n;
      if (k < n) expect(k - 1, k) = cpp_rational(k * (n - k), 2);
    }
    add("TAT_bidiagonal", 0, TAT == expect, "upper bidiagonal with closed-form entries");
    // the diagonal of TAT is the spectrum, reversed
    const auto g = eigenvalues_A(n);
    bool ok = true;
    for (int k = 1; k <= n; ++k)
      ok = ok && expect(k - 1, k - 1).convert_to<double>() == g[n - k];
    add("eigenvalues", 0, ok, "diagonal of T A T matches gamma_{n+1-k}");
  }

  // sum_k (-1)^k C(a,k) C(k+r,b) = (-1)^a C(r, b-a), all a, r <= n, b <= 2n
  {
    int bad = 0, total = 0;
    for (int a = 0; a <= n; ++a)
      for (int r = 0; r <= n; ++r)
        for (int b = 0; b <= 2 * n; ++b) {
          cpp_int s = 0;
          for (int k = 0; k <= a; ++k) s += (k % 2 ? -1 : 1) * binom(a, k) * binom(k + r, b);
          cpp_int rhs = (a % 2 ? -1 : 1) * binom(r, b - a);
          ++total;
          if (s != rhs) ++bad;
        }
    add("chu_vandermonde", 0, bad == 0,
        std::to_string(total - bad) + "/" + std::to_string(total) + " triples");
  }

  // floating point repeat of the v.B^{2j} f and A B^l f checks
  {
    bool ok = true;
    double worst = 0.0;
    for (int ell = 1; ell <= 2 * n; ++ell) {
      const auto lhs = mat_vec(Ad, powB_f<double>(n, ell));
      std::vector<double> rhs(n, 0.0), mag(n, 0.0);
      for (int j = 0; j <= (ell - 1) / 2; ++j) {
        const double coef = binom(ell, 2 * j + 2).convert_to<double>() - n * binom(ell, 2 * j + 1).convert_to<double>();
        const auto b = powB_f<double>(n, ell - 2 * j);
        for (int k = 0; k < n; ++k) {
          rhs[k] += coef * b[k];
          mag[k] += std::abs(coef * b[k]);
        }
      }
      for (int k = 0; k < n; ++k) {
        const double err = std::abs(lhs[k] - rhs[k]) / std::max(1.0, mag[k]);
        worst = std::max(worst, err);
      }
    }
    for (int j = 1; j <= n; ++j) {
      const auto b = powB_f<double>(n, 2 * j);
      double s = 0.0, mag = 0.0;
      for (int k = 0; k < n; ++k) {
        s += vd[k] * b[k];
        mag += std::abs(vd[k] * b[k]);
      }
      double expect = 0.0;
      if (j == n) expect = (n % 2 ? -1.0 : 1.0) * std::exp(std::lgamma(2.0 * n + 1) - std::log(2.0)) / binom(2 * n, n).convert_to<double>();
      worst = std::max(worst, std::abs(s - expect) / std::max(1.0, mag));
    }
    ok = worst <= 1e-12;
    add("float_repeat", 0, ok, "worst scaled error " + std::to_string(worst));
  }
  return rep;
}

}  // namespace sinebeta
