#include "sinebeta/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <stdexcept>

#include "sinebeta/closed_forms.hpp"
#include "sinebeta/linalg.hpp"
#include "sinebeta/ode.hpp"
#include "sinebeta/sde.hpp"
#include "sinebeta/series.hpp"

namespace sinebeta {

namespace {

constexpr double pi = std::numbers::pi;

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = a + (b - a) * i / (n - 1);
  return x;
}

SdeConfig mc_base(const SuiteOptions& o, long full_paths) {
  SdeConfig c;
  c.paths = o.quick ? 20000 : full_paths;
  c.master_seed = o.seed;
  c.threads = o.threads;
  return c;
}

CurveRow exact_row(double lambda, double value, const char* engine, double beta, double delta, int order,
                   double tail) {
  CurveRow r;
  r.lambda = lambda;
  r.value = value;
  r.engine = engine;
  r.beta = beta;
  r.delta = delta;
  r.order = order;
  r.tail_bound = tail;
  return r;
}

// worst |z| and worst absolute error of MC rows against an exact curve
struct Agreement {
  double worst_z = 0.0;
  double worst_abs = 0.0;
};

template <class F>
Agreement compare(const CurveTable& mc, F exact) {
  Agreement a;
  for (const auto& r : mc.rows) {
    const double d = r.value - exact(r.lambda);
    a.worst_abs = std::max(a.worst_abs, std::abs(d));
    a.worst_z = std::max(a.worst_z, std::abs(d) / *r.stderr_value);
  }
  return a;
}

CriterionResult c1(CurveTable& t) {
  CriterionResult r{1, "sine-kernel reproduction by series", false, {}, 0.0};
  const auto grid = linspace(0.0, 20.0, 200);
  const auto c = compute_coefficients(1, 2.0, 20.0);
  double worst = 0.0;
  for (double l : grid) {
    const double v = sine_pair_corr_series(c, l);
    worst = std::max(worst, std::abs(v - sine2_rho2(l)));
    t.rows.push_back(exact_row(l, v, "series", 2.0, 1.0, c.K(), c.tail_bound()));
  }
  r.passed = worst <= 1e-10;
  r.detail = fmt("max abs error %.3e (limit 1e-10)", worst);
  return r;
}

CriterionResult c2(CurveTable& t) {
  CriterionResult r{2, "beta=4 reproduction by series and ODE", false, {}, 0.0};
  const auto grid = linspace(0.0, 30.0, 301);
  const auto c = compute_coefficients(2, 4.0, 30.0);
  const auto run = integrate_q(2, 4.0, grid);
  const auto ode = hp_density_ode(run);
  double ws = 0.0, wo = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double l = grid[i];
    const double exact = sine4_rho2(l);
    const double vs = sine_pair_corr_series(c, l);
    const double vo = ode.rows[i].value / (2.0 * pi);
    ws = std::max(ws, std::abs(vs - exact));
    wo = std::max(wo, std::abs(vo - exact));
    t.rows.push_back(exact_row(l, vs, "series", 4.0, 2.0, c.K(), c.tail_bound()));
    t.rows.push_back(exact_row(l, vo, "ode", 4.0, 2.0, run.seed_order, run.atol));
  }
  r.passed = ws <= 1e-8 && wo <= 1e-7;
  r.detail = fmt("series %.3e (limit 1e-8), ", ws) + fmt("ODE %.3e (limit 1e-7)", wo);
  return r;
}

CriterionResult mc_vs_exact(int id, const char* name, double beta, std::vector<double> grid, double (*exact)(double),
                            double abs_limit, const SuiteOptions& o, CurveTable& t) {
  CriterionResult r{id, name, false, {}, 0.0};
  auto cfg = mc_base(o, 200000);
  cfg.beta = beta;
  cfg.delta = 0.5 * beta;
  cfg.lambda_grid = std::move(grid);
  const auto mc = mc_pair_correlation(cfg);
  t.append(mc);
  const auto a = compare(mc, exact);
  r.passed = a.worst_z <= 3.0 && a.worst_abs <= abs_limit;
  r.detail = fmt("worst |z| %.2f (limit 3), ", a.worst_z) + fmt("worst abs error %.2e", a.worst_abs);
  return r;
}

CriterionResult c5(const SuiteOptions& o, CurveTable& t) {
  CriterionResult r{5, "MC density at beta=3, delta=1 against the closed form", false, {}, 0.0};
  auto cfg = mc_base(o, 200000);
  cfg.beta = 3.0;
  cfg.delta = 1.0;
  cfg.lambda_grid = {1.0, 4.0};
  const auto mc = mc_hp_density(cfg);
  t.append(mc);
  const auto a = compare(mc, [](double l) { return hp_delta1_density(3.0, l); });
  for (double l : cfg.lambda_grid) t.rows.push_back(exact_row(l, hp_delta1_density(3.0, l), "closed", 3.0, 1.0, 0, 0.0));
  r.passed = a.worst_z <= 3.0;
  r.detail = fmt("worst |z| %.2f (limit 3)", a.worst_z);
  return r;
}

CriterionResult c6(CurveTable& t) {
  CriterionResult r{6, "small-lambda asymptotics", false, {}, 0.0};
  r.passed = true;
  for (int n = 1; n <= 3; ++n) {
    const double l = n == 3 ? 0.1 : 0.05;
    const double v = sine_pair_corr_series(n, l);
    const double ratio = v / (cor_constant(n) * std::pow(l, 2 * n) / (4.0 * pi * pi));
    t.rows.push_back(exact_row(l, v, "series", 2.0 * n, n, 0, 0.0));
    r.passed = r.passed && ratio >= 0.98 && ratio <= 1.02;
    r.detail += fmt("n=%.0f ratio %.5f; ", n, ratio);
  }
  return r;
}

CriterionResult c7() {
  CriterionResult r{7, "identity suite", false, {}, 0.0};
  r.passed = true;
  int checks = 0;
  for (int n = 1; n <= 20; ++n) {
    const auto rep = identity_report(n);
    checks += static_cast<int>(rep.checks.size());
    for (const auto& c : rep.checks)
      if (!c.passed) {
        r.passed = false;
        r.detail += "n=" + std::to_string(n) + " " + c.name + "[" + std::to_string(c.index) + "] ";
      }
  }
  if (r.passed) r.detail = std::to_string(checks) + " checks over n = 1..20";
  return r;
}

CriterionResult c8(const SuiteOptions& o, CurveTable& t) {
  CriterionResult r{8, "decay envelope", false, {}, 0.0};
  r.passed = true;
  for (double beta : {2.0, 4.0, 8.0}) {
    auto cfg = mc_base(o, 100000);
    try {
      const auto rep = decay_report(beta, {4.0, 8.0, 16.0, 32.0}, cfg);
      for (std::size_t i = 0; i < rep.lambda.size(); ++i) {
        CurveRow row = exact_row(rep.lambda[i], rep.value[i], "mc", beta, 0.5 * beta, resolve_k_max(0.5 * beta),
                                 0.0);
        row.stderr_value = rep.stderr_value[i];
        row.seed = o.seed;
        t.rows.push_back(row);
      }
      r.passed = r.passed && rep.passed;
      r.detail += fmt("beta=%g c=%.3e ", beta, rep.fitted_c) +
                  fmt("last/median %.2f; ", rep.ratio.back() / rep.median_ratio);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail += fmt("beta=%g: ", beta) + e.what() + "; ";
    }
  }
  return r;
}

CriterionResult c9(const SuiteOptions& o, CurveTable& t) {
  CriterionResult r{9, "continuity in beta", false, {}, 0.0};
  r.passed = true;
  struct Scan {
    std::vector<double> betas;
    double lambda;
    double anchor_beta;
    double anchor;
  };
  const Scan scans[] = {{{1.9, 1.95, 2.0, 2.05, 2.1}, pi, 2.0, sine2_rho2(pi)},
                        {{3.9, 3.95, 4.0, 4.05, 4.1}, 2.0, 4.0, sine4_rho2(2.0)}};
  for (const auto& s : scans) {
    const auto rep = continuity_scan(s.betas, s.lambda, mc_base(o, 100000));
    for (std::size_t i = 0; i < rep.beta.size(); ++i) {
      CurveRow row = exact_row(s.lambda, rep.value[i], "mc", rep.beta[i], 0.5 * rep.beta[i],
                               resolve_k_max(0.5 * rep.beta[i]), 0.0);
      row.stderr_value = rep.stderr_value[i];
      row.seed = o.seed;
      t.rows.push_back(row);
      if (rep.beta[i] == s.anchor_beta) {
        const double z = std::abs(rep.value[i] - s.anchor) / rep.stderr_value[i];
        r.passed = r.passed && z <= 3.0;
        r.detail += fmt("anchor beta=%g |z| %.2f, ", s.anchor_beta, z);
      }
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < rep.difference.size(); ++i) worst = std::max(worst, rep.difference[i] / rep.budget[i]);
    r.passed = r.passed && rep.passed;
    r.detail += fmt("worst diff/budget %.2f; ", worst);
  }
  return r;
}

CriterionResult c11(const SuiteOptions& o, CurveTable& t) {
  CriterionResult r{11, "engine triangle", false, {}, 0.0};
  r.passed = true;
  const std::vector<double> grid = {0.5, 1.5, 3.0, 5.0, 8.0};
  for (int n = 1; n <= 3; ++n) {
    const double beta = 2.0 * n;
    const auto c = compute_coefficients(n, beta, grid.back());
    const auto run = integrate_q(n, beta, grid);
    double worst_q = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto qs = q_series(c, grid[i]);
      for (int k = 0; k < n; ++k) worst_q = std::max(worst_q, std::abs(qs.q[k] - run.values[i].q[k]));
      t.rows.push_back(exact_row(grid[i], sine_pair_corr_series(c, grid[i]), "series", beta, n, c.K(), c.tail_bound()));
    }
    auto cfg = mc_base(o, 100000);
    cfg.beta = beta;
    cfg.delta = n;
    cfg.lambda_grid = grid;
    const auto mc = mc_pair_correlation(cfg);
    t.append(mc);
    const auto a = compare(mc, [&](double l) { return sine_pair_corr_series(c, l); });
    r.passed = r.passed && worst_q <= 1e-8 && a.worst_z <= 3.0;
    r.detail += fmt("n=%.0f series/ODE %.2e ", n, worst_q) + fmt("MC |z| %.2f; ", a.worst_z);
  }
  return r;
}

}  // namespace

std::vector<int> suite_criteria() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 11}; }

CriterionResult run_criterion(int id, const SuiteOptions& o, CurveTable& t) {
  const auto ids = suite_criteria();
  if (std::find(ids.begin(), ids.end(), id) == ids.end())
    throw std::invalid_argument("no suite criterion " + std::to_string(id));
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = c1(t); break;
      case 2: r = c2(t); break;
      case 3:
        r = mc_vs_exact(3, "MC against the sine kernel at beta=2", 2.0, {0.5, pi, 2.0 * pi, 10.0}, sine2_rho2,
                        5e-3, o, t);
        break;
      case 4:
        r = mc_vs_exact(4, "MC against the beta=4 formula", 4.0, {1.0, pi, 8.0}, sine4_rho2, 1e300, o, t);
        break;
      case 5: r = c5(o, t); break;
      case 6: r = c6(t); break;
      case 7: r = c7(); break;
      case 8: r = c8(o, t); break;
      case 9: r = c9(o, t); break;
      case 11: r = c11(o, t); break;
    }
  } catch (const std::exception& e) {
    r.id = id;
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  while (!r.detail.empty() && (r.detail.back() == ' ' || r.detail.back() == ';' || r.detail.back() == ','))
    r.detail.pop_back();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

SuiteResult run_suite(const SuiteOptions& opts) {
  SuiteResult s;
  for (int id : suite_criteria()) s.criteria.push_back(run_criterion(id, opts, s.table));
  return s;
}

}  // namespace sinebeta
