#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sinebeta/curve_table.hpp"

namespace sinebeta {

struct SdeConfig {
  double beta = 2.0;
  double delta = 1.0;
  std::vector<double> lambda_grid;
  double eps_cut = 1e-3;
  double dt = 1e-3;
  long paths = 200000;
  std::uint64_t master_seed = 7;
  int k_max = 0;    // 0 selects automatically
  int threads = 0;  // 0 uses SINEBETA_THREADS or the hardware count
};

// K = n for integer delta = n, else the smallest K >= 8 with |c_K| < 1e-4
int resolve_k_max(double delta, int requested = 0);
int worker_count(int requested = 0);

struct MomentEstimates {
  double lambda = 0.0;
  std::vector<double> m;   // E cos(k alpha), k = 1..K
  std::vector<double> se;
  long paths = 0;
  // sum_k c_k cos(k alpha) averaged over paths, with its standard error
  double weighted = 0.0;
  double weighted_se = 0.0;
};

struct SimulationResult {
  SdeConfig config;
  int k_max = 0;
  std::vector<MomentEstimates> moments;  // one per grid lambda
  // fraction of paths on which alpha(0) is nondecreasing in lambda up to 10 dt
  double monotone_fraction = 1.0;
  // bound on the neglected sum_{k > K} |c_k|
  double coefficient_tail = 0.0;
};

SimulationResult simulate_paths(const SdeConfig& config);

CurveTable mc_pair_correlation(const SimulationResult& sim);
CurveTable mc_pair_correlation(const SdeConfig& config);
CurveTable mc_hp_density(const SimulationResult& sim);
CurveTable mc_hp_density(const SdeConfig& config);

struct DecayReport {
  double beta = 0.0;
  std::vector<double> lambda, value, stderr_value, deviation, envelope, ratio;
  double fitted_c = 0.0;
  double median_ratio = 0.0;
  bool passed = false;
};

// |rho2 - 1/4pi^2| against lambda^-1 + lambda^-beta/2 + lambda^-4/beta
DecayReport decay_report(double beta, const std::vector<double>& lambdas, const SdeConfig& base);

struct ContinuityReport {
  double lambda = 0.0;
  std::vector<double> beta, value, stderr_value;
  std::vector<double> difference, budget;
  double total_variation = 0.0;
  bool passed = true;
};

ContinuityReport continuity_scan(const std::vector<double>& betas, double lambda, const SdeConfig& base);

}  // namespace sinebeta
