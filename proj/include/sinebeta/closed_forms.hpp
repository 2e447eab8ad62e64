#pragma once

#include <complex>

namespace sinebeta {

enum class ClosedFormKind { sine2, sine4, hp_delta1_hyp, hp_delta1_integral, beta4_q2 };

double sine2_rho2(double lambda);
double sine4_rho2(double lambda);

struct Beta4Q {
  std::complex<double> q1;
  std::complex<double> q2;
  std::complex<double> dq2;  // derivative of q2
};

// lambda > 1e-3
Beta4Q beta4_q2(double lambda);

enum class Delta1Form { hypergeometric, integral };

double hp_delta1_density(double beta, double lambda, Delta1Form form = Delta1Form::hypergeometric);

}  // namespace sinebeta
