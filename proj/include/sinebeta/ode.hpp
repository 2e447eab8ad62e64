#pragma once

#include <vector>

#include "sinebeta/curve_table.hpp"
#include "sinebeta/series.hpp"

namespace sinebeta {

struct OdeRun {
  int n = 0;
  double beta = 0.0;
  std::vector<double> lambda_grid;
  double seed_lambda = 0.0;   // series hands over to the integrator here
  int seed_order = 0;
  double rtol = 0.0;
  double atol = 0.0;
  std::vector<QValue> values;
  int accepted = 0;
  int rejected = 0;
  // largest defect of the dense output at a step midpoint, as a multiple of
  // the local tolerance
  double max_residual_ratio = 0.0;
  double max_abs_q = 0.0;
};

// Grid points at or below seed_lambda come from the seeding series.
OdeRun integrate_q(int n, double beta, const std::vector<double>& lambda_grid, double rtol = 1e-11,
                   double atol = 1e-13, double seed_lambda = 1e-2);

CurveTable hp_density_ode(const OdeRun& run);

}  // namespace sinebeta
