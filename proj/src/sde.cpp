#include "sinebeta/sde.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "sde_kernel.hpp"
#include "sinebeta/errors.hpp"
#include "sinebeta/special.hpp"

namespace sinebeta {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int kChunkPaths = 256;

bool is_positive_integer(double x) { return x >= 1.0 && x == std::floor(x) && x <= 1e6; }

void validate(const SdeConfig& c) {
  if (!(c.beta > 0.0) || !std::isfinite(c.beta)) throw ConfigError("beta must be positive and finite");
  if (!(c.delta > 0.0) || !std::isfinite(c.delta)) throw ConfigError("delta must be positive and finite");
  if (c.lambda_grid.empty()) throw ConfigError("lambda grid is empty");
  for (std::size_t i = 0; i < c.lambda_grid.size(); ++i) {
    if (!(c.lambda_grid[i] >= 0.0) || !std::isfinite(c.lambda_grid[i]))
      throw ConfigError("lambda values must be finite and nonnegative");
    if (i > 0 && !(c.lambda_grid[i] > c.lambda_grid[i - 1]))
      throw ConfigError("lambda grid must be strictly increasing");
  }
  if (!(c.eps_cut > 0.0)) throw ConfigError("eps_cut must be positive");
  if (!(c.dt > 0.0 && c.dt <= 1e-2)) throw ConfigError("dt must lie in (0, 1e-2]");
  if (c.paths < 2) throw ConfigError("need at least 2 paths");
  if (c.k_max < 0) throw ConfigError("k_max must be nonnegative");
}

// partial sums for one chunk of paths: per lambda, sum cos(k a), sum cos^2(k a),
// sum y, sum y^2 with y = sum_k c_k cos(k a); then the monotone path count
struct Layout {
  int L, K;
  int per_lambda() const { return 2 * K + 2; }
  int size() const { return L * per_lambda() + 1; }
};

std::vector<double> tree_sum(const std::vector<std::vector<double>>& parts, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return parts[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  auto a = tree_sum(parts, lo, mid);
  const auto b = tree_sum(parts, mid, hi);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

}  // namespace

int resolve_k_max(double delta, int requested) {
  if (requested > 0) return requested;
  if (is_positive_integer(delta)) return static_cast<int>(delta);
  double c = 1.0;
  for (int k = 1; k < 10000000; ++k) {
    c *= (-delta + (k - 1)) / (delta + k);
    if (k >= 8 && std::abs(c) < 1e-4) return k;
  }
  throw ConfigError("automatic k_max did not terminate");
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SINEBETA_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(std::min<long>(v, 1024));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

SimulationResult simulate_paths(const SdeConfig& config) {
  validate(config);
  SimulationResult res;
  res.config = config;
  const int K = resolve_k_max(config.delta, config.k_max);
  res.k_max = K;
  res.config.k_max = K;

  const auto coeff = pochhammer_ratio_seq(config.delta, K);
  if (!is_positive_integer(config.delta) || K < config.delta) {
    const int kfit = std::max(20, 4 * K);
    const double cfit = fit_coefficient_constant(pochhammer_ratio_seq(config.delta, kfit), kfit);
    res.coefficient_tail = cfit * std::pow(double(K), -2.0 * config.delta) / (2.0 * config.delta);
  }

  const auto& grid = config.lambda_grid;
  const int L = static_cast<int>(grid.size());
  std::vector<int> first(L);
  for (int l = 0; l < L; ++l) {
    if (grid[l] <= config.eps_cut) {
      first[l] = 0;
      continue;
    }
    const double steps = std::ceil((4.0 / config.beta) * std::log(grid[l] / config.eps_cut) / config.dt);
    if (steps > 2e9) throw ConfigError("cutoff requires too many steps");
    first[l] = static_cast<int>(steps);
  }
  const int top = first[L - 1];
  std::vector<double> drift(top + 1, 0.0);
  const double step_mass = std::expm1(0.25 * config.beta * config.dt);
  for (int j = 1; j <= top; ++j) drift[j] = std::exp(-0.25 * config.beta * j * config.dt) * step_mass;

  const Layout lay{L, K};
  const long n_chunks = (config.paths + kChunkPaths - 1) / kChunkPaths;
  std::vector<std::vector<double>> parts(n_chunks);
  std::atomic<long> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  const double slack = 10.0 * config.dt;

  auto work = [&] {
    try {
      std::vector<double> alpha(std::size_t(L) * detail::kLanes);
      std::vector<double> ck(K + 1);
      std::uint64_t keys[detail::kLanes];
      for (;;) {
        const long chunk = next.fetch_add(1);
        if (chunk >= n_chunks || failed.load()) break;
        std::vector<double> acc(lay.size(), 0.0);
        for (long p0 = chunk * kChunkPaths; p0 < std::min<long>(config.paths, (chunk + 1) * kChunkPaths);
             p0 += detail::kLanes) {
          for (int p = 0; p < detail::kLanes; ++p) keys[p] = detail::path_key(config.master_seed, p0 + p);
          detail::BlockJob job{keys,      L, grid.data(), first.data(), drift.data(), config.delta * config.dt,
                               std::sqrt(config.dt), alpha.data()};
          detail::advance_block(job);
          const int lanes = static_cast<int>(std::min<long>(detail::kLanes, config.paths - p0));
          for (int p = 0; p < lanes; ++p) {
            bool monotone = true;
            for (int l = 0; l < L; ++l) {
              const double a = alpha[l * detail::kLanes + p];
              if (!std::isfinite(a) || std::abs(a) > 1e6)
                throw BlowUpError("alpha left [-1e6, 1e6] on path " + std::to_string(p0 + p) +
                                  "; reduce dt");
              if (l > 0 && a < alpha[(l - 1) * detail::kLanes + p] - slack) monotone = false;
              double* row = acc.data() + std::size_t(l) * lay.per_lambda();
              const double c1 = std::cos(a);
              double prev = 1.0, cur = c1, y = 0.0;
              for (int k = 1; k <= K; ++k) {
                row[k - 1] += cur;
                row[K + k - 1] += cur * cur;
                y += coeff[k] * cur;
                const double nxt = 2.0 * c1 * cur - prev;
                prev = cur;
                cur = nxt;
              }
              row[2 * K] += y;
              row[2 * K + 1] += y * y;
            }
            if (monotone) acc.back() += 1.0;
          }
        }
        parts[chunk] = std::move(acc);
      }
    } catch (...) {
      std::lock_guard<std::mutex> g(error_mutex);
      if (!error) error = std::current_exception();
      failed = true;
    }
  };

  const int nthreads = static_cast<int>(std::min<long>(worker_count(config.threads), n_chunks));
  if (nthreads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  const auto total = tree_sum(parts, 0, parts.size());
  const double N = double(config.paths);
  auto moments = [&](double s, double s2, double& mean, double& se) {
    mean = s / N;
    const double var = std::max(0.0, (s2 - N * mean * mean) / (N - 1.0));
    se = std::sqrt(var / N);
  };
  for (int l = 0; l < L; ++l) {
    const double* row = total.data() + std::size_t(l) * lay.per_lambda();
    MomentEstimates m;
    m.lambda = grid[l];
    m.paths = config.paths;
    m.m.resize(K);
    m.se.resize(K);
    for (int k = 0; k < K; ++k) moments(row[k], row[K + k], m.m[k], m.se[k]);
    moments(row[2 * K], row[2 * K + 1], m.weighted, m.weighted_se);
    res.moments.push_back(std::move(m));
  }
  res.monotone_fraction = total.back() / N;
  return res;
}

namespace {

CurveTable assemble(const SimulationResult& sim, double base, double scale) {
  CurveTable t;
  for (const auto& m : sim.moments) {
    CurveRow r;
    r.lambda = m.lambda;
    r.value = base + scale * m.weighted;
    r.stderr_value = scale * m.weighted_se;
    r.engine = "mc";
    r.beta = sim.config.beta;
    r.delta = sim.config.delta;
    r.order = sim.k_max;
    r.seed = sim.config.master_seed;
    r.tail_bound = scale * sim.coefficient_tail;
    t.rows.push_back(r);
  }
  return t;
}

void require_palm(const SdeConfig& c) {
  if (std::abs(c.delta - 0.5 * c.beta) > 1e-12 * std::max(1.0, c.beta))
    throw ConfigError("pair correlation needs delta = beta/2");
}

}  // namespace

CurveTable mc_pair_correlation(const SimulationResult& sim) {
  require_palm(sim.config);
  return assemble(sim, 1.0 / (4.0 * pi * pi), 1.0 / (2.0 * pi * pi));
}

CurveTable mc_pair_correlation(const SdeConfig& config) {
  require_palm(config);
  return mc_pair_correlation(simulate_paths(config));
}

CurveTable mc_hp_density(const SimulationResult& sim) { return assemble(sim, 1.0 / (2.0 * pi), 1.0 / pi); }

CurveTable mc_hp_density(const SdeConfig& config) { return mc_hp_density(simulate_paths(config)); }

DecayReport decay_report(double beta, const std::vector<double>& lambdas, const SdeConfig& base) {
  if (lambdas.empty()) throw ConfigError("decay report needs at least one lambda");
  for (double l : lambdas)
    if (!(l >= 2.0)) throw DomainError("decay report needs lambda >= 2");
  SdeConfig cfg = base;
  cfg.beta = beta;
  cfg.delta = 0.5 * beta;
  cfg.lambda_grid = lambdas;
  std::sort(cfg.lambda_grid.begin(), cfg.lambda_grid.end());
  const auto curve = mc_pair_correlation(cfg);

  DecayReport rep;
  rep.beta = beta;
  for (const auto& r : curve.rows) {
    const double env = 1.0 / r.lambda + std::pow(r.lambda, -0.5 * beta) + std::pow(r.lambda, -4.0 / beta);
    if (*r.stderr_value > 0.5 * env)
      throw PrecisionError("stderr " + std::to_string(*r.stderr_value) + " exceeds half the envelope at lambda = " +
                           std::to_string(r.lambda));
    const double dev = std::abs(r.value - 1.0 / (4.0 * pi * pi));
    rep.lambda.push_back(r.lambda);
    rep.value.push_back(r.value);
    rep.stderr_value.push_back(*r.stderr_value);
    rep.deviation.push_back(dev);
    rep.envelope.push_back(env);
    rep.ratio.push_back(dev / env);
  }
  rep.fitted_c = *std::max_element(rep.ratio.begin(), rep.ratio.end());
  auto sorted = rep.ratio;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t h = sorted.size() / 2;
  rep.median_ratio = sorted.size() % 2 ? sorted[h] : 0.5 * (sorted[h - 1] + sorted[h]);
  rep.passed = std::isfinite(rep.fitted_c) && rep.ratio.back() <= 2.0 * rep.median_ratio;
  return rep;
}

ContinuityReport continuity_scan(const std::vector<double>& betas, double lambda, const SdeConfig& base) {
  for (std::size_t i = 1; i < betas.size(); ++i)
    if (!(std::abs(betas[i] - betas[i - 1]) <= 0.25)) throw ConfigError("adjacent beta spacing must be <= 0.25");
  ContinuityReport rep;
  rep.lambda = lambda;
  for (double b : betas) {
    SdeConfig cfg = base;
    cfg.beta = b;
    cfg.delta = 0.5 * b;
    cfg.lambda_grid = {lambda};
    const auto row = mc_pair_correlation(cfg).rows.front();
    rep.beta.push_back(b);
    rep.value.push_back(row.value);
    rep.stderr_value.push_back(*row.stderr_value);
  }
  for (std::size_t i = 1; i < rep.value.size(); ++i) {
    rep.difference.push_back(std::abs(rep.value[i] - rep.value[i - 1]));
    rep.total_variation += rep.difference.back();
  }
  for (std::size_t i = 0; i < rep.difference.size(); ++i) {
    const double se = std::hypot(rep.stderr_value[i], rep.stderr_value[i + 1]);
    rep.budget.push_back(std::max(5.0 * se, 0.1 * rep.total_variation));
    if (rep.difference[i] > rep.budget[i]) rep.passed = false;
  }
  return rep;
}

}  // namespace sinebeta
