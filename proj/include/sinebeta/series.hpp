#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace sinebeta {

// Taylor coefficients s_k of q(lambda) = sum_k s_k lambda^k for integer
// delta = n. s_k = i^k r_k with r_k real; the r_k are held in extended
// precision since the partial sums cancel heavily for large lambda.
class SeriesCoefficients {
 public:
  int n() const;
  double beta() const;
  int K() const;
  double lambda_max() const;
  double tol() const;
  double tail_bound() const;
  double kappa() const;
  unsigned precision_bits() const;

  // s_k[i] rounded to double
  std::vector<std::complex<double>> s(int k) const;
  // v . s_{2j} rounded to double
  double v_dot_s_even(int j) const;

  struct Impl;
  const Impl& impl() const { return *impl_; }
  explicit SeriesCoefficients(std::shared_ptr<const Impl> p) : impl_(std::move(p)) {}

 private:
  std::shared_ptr<const Impl> impl_;
};

struct QValue {
  double lambda = 0.0;
  std::vector<std::complex<double>> q;
  double tail_bound = 0.0;
};

SeriesCoefficients compute_coefficients(int n, double beta, double lambda_max, double tol = 1e-15);

QValue q_series(const SeriesCoefficients& c, double lambda);
std::vector<std::complex<double>> q_derivative_series(const SeriesCoefficients& c, double lambda);

double hp_density_series(const SeriesCoefficients& c, double lambda);

// requires c.beta() == 2 c.n()
double sine_pair_corr_series(const SeriesCoefficients& c, double lambda);
double sine_pair_corr_series(int n, double lambda, double tol = 1e-15);

// coefficient of lambda^{2n} in the density near 0
double small_lambda_constant(int n, double beta);
// n^{2n} (n!)^3 / ((2n)! (3n)!)
double cor_constant(int n);

}  // namespace sinebeta
