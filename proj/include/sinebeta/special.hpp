#pragma once

#include <cstddef>
#include <vector>

namespace sinebeta {

// c_k = (-delta)^{(k)} / (1+delta)^{(k)}, rising factorials, k = 1..K
struct CoeffSeq {
  double delta = 0.0;
  std::vector<double> values;

  std::size_t K() const { return values.size(); }
  double operator[](std::size_t k) const { return k == 0 ? 1.0 : values.at(k - 1); }
};

CoeffSeq pochhammer_ratio_seq(double delta, int k_max);

// smallest constant c with |c_k| <= c k^{-1-2 delta} over k = 1..k_fit
double fit_coefficient_constant(const CoeffSeq& c, int k_fit = 20);

// density of the angle Theta on [0, 2pi)
double theta_density(double delta, double theta);
double theta_fourier_coeff(double delta, int k);
// distribution function of Theta from its Fourier series, k_max terms
double theta_cdf_series(double delta, double x, int k_max);

// Si(x) = int_0^x sin(t)/t dt, 0 <= x <= 1e4
double sine_integral(double x);

// 1F2(a; b1, b2; z), |z| <= 1e4
double hyp1f2(double a, double b1, double b2, double z);

}  // namespace sinebeta
