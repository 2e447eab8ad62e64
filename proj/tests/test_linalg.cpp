#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "sinebeta/errors.hpp"
#include "sinebeta/linalg.hpp"

using namespace sinebeta;

namespace {

Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

}  // namespace

TEST_CASE("system matrices, small n") {
  auto s = build_system(1);
  CHECK(s.A(0, 0) == -1.0);
  CHECK(s.B == std::vector<double>{1.0});
  CHECK(s.v == std::vector<double>{-0.5});

  s = build_system(2);
  CHECK(s.A(0, 0) == -1.0);
  CHECK(s.A(0, 1) == -0.5);
  CHECK(s.A(1, 0) == 4.0);
  CHECK(s.A(1, 1) == -4.0);
  CHECK(s.B == std::vector<double>{1.0, 2.0});
  CHECK(s.v[0] == doctest::Approx(-2.0 / 3).epsilon(1e-15));
  CHECK(s.v[1] == doctest::Approx(1.0 / 6).epsilon(1e-15));

  s = build_system(3);
  CHECK(s.A(1, 0) == 5.0);
  CHECK(s.A(1, 2) == -1.0);
  CHECK(s.A(2, 1) == 9.0);
  CHECK(s.A(2, 2) == -9.0);
  CHECK(s.e == std::vector<double>{1, 0, 0});
  CHECK(s.f == std::vector<double>{1, 1, 1});
}

TEST_CASE("system matrix invariants") {
  for (int n = 1; n <= 64; ++n) {
    const auto s = build_system(n);
    double vf = 0.0;
    for (double x : s.v) vf += x;
    CHECK(std::abs(vf + 0.5) < 1e-13);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (std::abs(i - j) > 1) CHECK(s.A(i, j) == 0.0);
    // the chain closes at k = n
    if (n > 1) CHECK(s.A_super.back() == doctest::Approx(0.5 * (n - 1) * (-1.0)));
    // row sums of A f vanish except the first
    for (int k = 1; k < n; ++k) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) row += s.A(k, j);
      CHECK(row == 0.0);
    }
  }
  CHECK_THROWS_AS(build_system(0), SizeError);
  CHECK_THROWS_AS(build_system(65), SizeError);
}

TEST_CASE("eigenvalues of A") {
  CHECK(eigenvalues_A(1) == std::vector<double>{-1.0});
  CHECK(eigenvalues_A(2) == std::vector<double>{-3.0, -2.0});
  CHECK(eigenvalues_A(5) == std::vector<double>{-15, -14, -12, -9, -5});
  const auto a2 = to_eigen(build_system(2).A);
  CHECK(a2.trace() == -5.0);
  CHECK(a2.determinant() == doctest::Approx(6.0));

  for (int n = 1; n <= 20; ++n) {
    const auto g = eigenvalues_A(n);
    CHECK(g.back() == -n);
    for (int k = 1; k < n; ++k) CHECK(g[k] > g[k - 1]);
    const auto an = to_eigen(build_system(n).A);
    double gsum = 0.0;
    for (double x : g) gsum += x;
    CHECK(an.trace() == gsum);
    if (n > 8) continue;
    Eigen::EigenSolver<Eigen::MatrixXd> es(an);
    std::vector<double> num;
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(es.eigenvalues()[i].imag()) < 1e-6 * std::abs(g.front()));
      num.push_back(es.eigenvalues()[i].real());
    }
    std::sort(num.begin(), num.end());
    for (int i = 0; i < n; ++i) CHECK(std::abs(num[i] - g[i]) <= 1e-9 * std::abs(g[i]));
  }
}

TEST_CASE("involution T") {
  const auto T2 = involution_T(2);
  CHECK(T2(0, 0) == -1.0);
  CHECK(T2(0, 1) == 0.0);
  CHECK(T2(1, 0) == -2.0);
  CHECK(T2(1, 1) == 1.0);
  CHECK(T2 * T2 == Matrix<double>::identity(2));

  const auto T3 = involution_T(3);
  const auto tat = T3 * build_system(3).A * T3;
  const double diag[] = {-3, -5, -6}, sup[] = {1, 1};
  for (int i = 0; i < 3; ++i) {
    CHECK(tat(i, i) == diag[i]);
    if (i < 2) CHECK(tat(i, i + 1) == sup[i]);
    for (int j = 0; j < 3; ++j)
      if (j != i && j != i + 1) CHECK(tat(i, j) == 0.0);
  }
  // entries stay exact integers in double up to n = 30 for T T
  for (int n : {10, 20, 30}) CHECK(involution_T(n) * involution_T(n) == Matrix<double>::identity(n));
  CHECK_THROWS_AS(involution_T(31), SizeError);
}

TEST_CASE("identity report") {
  for (int n = 1; n <= 30; ++n) {
    const auto rep = identity_report(n);
    for (const auto& c : rep.checks) {
      INFO("n = " << n << " " << c.name << "[" << c.index << "] " << c.detail);
      CHECK(c.passed);
    }
  }
  const auto rep = identity_report(2);
  bool saw = false;
  for (const auto& c : rep.checks)
    if (c.name == "v_B2j_f" && c.index == 2) {
      saw = true;
      CHECK(c.detail.find("value 2") != std::string::npos);
    }
  CHECK(saw);
  CHECK_THROWS_AS(identity_report(31), SizeError);
}

TEST_CASE("matrix exponential decays at rate n") {
  for (int n = 1; n <= 8; ++n) {
    const Eigen::MatrixXd A = to_eigen(build_system(n).A);
    auto norm_at = [&](double x) {
      const Eigen::MatrixXd E = (x * A).exp();
      return Eigen::JacobiSVD<Eigen::MatrixXd>(E).singularValues()(0);
    };
    // e^{nx} |e^{xA}| settles to a constant
    const double g8 = norm_at(8.0) * std::exp(8.0 * n), g16 = norm_at(16.0) * std::exp(16.0 * n);
    CHECK(std::isfinite(g16));
    CHECK(std::abs(g16 / g8 - 1.0) < 1e-3);
  }
}
