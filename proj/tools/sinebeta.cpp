// sinebeta: pair correlation of Sine_beta and densities of HP_{beta,delta}
//
//   sinebeta rho2 --beta 2 --engine all --lambda-max 12.566 --points 5
//   sinebeta hpdensity --beta 3 --delta 1 --engine mc,closed
//   sinebeta validate --suite quick --seed 7 --output suite.csv
//   sinebeta identities --n 4
//   sinebeta decay --beta 4 --lambdas 4,8,16,32

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sinebeta/closed_forms.hpp"
#include "sinebeta/curve_table.hpp"
#include "sinebeta/errors.hpp"
#include "sinebeta/linalg.hpp"
#include "sinebeta/ode.hpp"
#include "sinebeta/sde.hpp"
#include "sinebeta/series.hpp"
#include "sinebeta/validation.hpp"

using namespace sinebeta;
using nlohmann::json;

namespace {

constexpr double pi = std::numbers::pi;

enum Exit { ok = 0, usage = 1, failed = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CurveArgs {
  double beta = 0.0;
  double delta = 0.0;
  std::string engine = "mc";
  double lambda_min = 0.0;
  double lambda_max = 10.0;
  int points = 50;
  std::string spacing = "linear";
  long paths = 200000;
  double dt = 1e-3;
  double eps_cut = 1e-3;
  int k_max = 0;
  std::uint64_t seed = 7;
  double tol = 1e-15;
  std::string format = "csv";
  std::string output;
};

void add_curve_options(CLI::App* cmd, CurveArgs& a, bool delta_required) {
  cmd->add_option("--beta", a.beta, "inverse temperature beta > 0")->required();
  auto* d = cmd->add_option("--delta", a.delta, delta_required ? "delta > 0" : "delta > 0 (default beta/2)");
  if (delta_required) d->required();
  cmd->add_option("--engine", a.engine, "mc, series, ode, closed, all, or a comma list")->capture_default_str();
  cmd->add_option("--lambda-min", a.lambda_min)->capture_default_str();
  cmd->add_option("--lambda-max", a.lambda_max)->capture_default_str();
  cmd->add_option("--points", a.points)->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--spacing", a.spacing)->check(CLI::IsMember({"linear", "log"}))->capture_default_str();
  cmd->add_option("--paths", a.paths)->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--dt", a.dt)->capture_default_str();
  cmd->add_option("--eps-cut", a.eps_cut)->capture_default_str();
  cmd->add_option("--k-max", a.k_max, "0 picks automatically")->capture_default_str();
  cmd->add_option("--seed", a.seed)->capture_default_str();
  cmd->add_option("--tol", a.tol, "series truncation tolerance")->capture_default_str();
  cmd->add_option("--format", a.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  cmd->add_option("--output,-o", a.output, "file to write (default stdout)");
}

std::vector<double> make_grid(const CurveArgs& a) {
  if (!(a.lambda_max >= a.lambda_min) || a.lambda_min < 0.0)
    throw UsageError("lambda range: need 0 <= lambda-min <= lambda-max");
  std::vector<double> g(a.points);
  if (a.points == 1) return {a.lambda_max};
  for (int i = 0; i < a.points; ++i) {
    const double t = double(i) / (a.points - 1);
    if (a.spacing == "log") {
      if (!(a.lambda_min > 0.0)) throw UsageError("lambda-min: log spacing needs a positive minimum");
      g[i] = a.lambda_min * std::pow(a.lambda_max / a.lambda_min, t);
    } else {
      g[i] = a.lambda_min + (a.lambda_max - a.lambda_min) * t;
    }
  }
  g.back() = a.lambda_max;
  return g;
}

bool positive_integer(double x) { return x >= 1.0 && x == std::floor(x) && x <= 64; }

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

bool closed_available(bool rho2, double beta, double delta) {
  if (rho2) return beta == 2.0 || beta == 4.0;
  return delta == 1.0 || (delta == 0.5 * beta && (beta == 2.0 || beta == 4.0));
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("output: cannot open " + path);
  f << text;
}

int run_curve(const CurveArgs& a, bool rho2) {
  double delta = a.delta;
  if (rho2) {
    if (a.delta != 0.0 && std::abs(a.delta - 0.5 * a.beta) > 1e-12)
      throw UsageError("delta: rho2 uses delta = beta/2");
    delta = 0.5 * a.beta;
  }
  if (!(a.beta > 0.0)) throw UsageError("beta: must be positive");
  if (!(delta > 0.0)) throw UsageError("delta: must be positive");
  const auto grid = make_grid(a);

  const bool integer_delta = positive_integer(delta);
  const bool closed_ok = closed_available(rho2, a.beta, delta);
  std::vector<std::string> engines;
  for (const auto& e : split(a.engine)) {
    if (e == "all") {
      if (integer_delta) engines.insert(engines.end(), {"series", "ode"});
      if (closed_ok) engines.push_back("closed");
      engines.push_back("mc");
      continue;
    }
    if (e != "mc" && e != "series" && e != "ode" && e != "closed") throw UsageError("engine: unknown engine " + e);
    if ((e == "series" || e == "ode") && !integer_delta)
      throw UsageError("engine: " + e + " needs delta to be a positive integer (the exact expansion exists only for integer delta)");
    if (e == "closed" && !closed_ok)
      throw UsageError(std::string("engine: no closed form for these parameters; ") +
                       (rho2 ? "rho2 has one at beta = 2 and 4" : "hpdensity has one at delta = 1"));
    engines.push_back(e);
  }
  {
    std::set<std::string> seen;
    std::vector<std::string> uniq;
    for (auto& e : engines)
      if (seen.insert(e).second) uniq.push_back(e);
    engines = uniq;
  }

  CurveTable table;
  json cfg = {{"subcommand", rho2 ? "rho2" : "hpdensity"},
              {"beta", a.beta},
              {"delta", delta},
              {"engines", engines},
              {"lambda_min", a.lambda_min},
              {"lambda_max", a.lambda_max},
              {"points", a.points},
              {"spacing", a.spacing},
              {"lambda_grid", grid}};
  const double scale = rho2 ? 1.0 / (2.0 * pi) : 1.0;
  for (const auto& e : engines) {
    if (e == "series") {
      const int n = static_cast<int>(delta);
      const auto c = compute_coefficients(n, a.beta, std::max(grid.back(), 1e-3), a.tol);
      for (double l : grid) {
        CurveRow r;
        r.lambda = l;
        r.value = rho2 ? sine_pair_corr_series(c, l) : hp_density_series(c, l);
        r.engine = "series";
        r.beta = a.beta;
        r.delta = delta;
        r.order = c.K();
        r.tail_bound = c.tail_bound();
        table.rows.push_back(r);
      }
      cfg["series"] = {{"tol", a.tol}, {"K", c.K()}, {"kappa", c.kappa()}, {"precision_bits", c.precision_bits()}};
    } else if (e == "ode") {
      const auto run = integrate_q(static_cast<int>(delta), a.beta, grid);
      auto t = hp_density_ode(run);
      for (auto& r : t.rows) r.value *= scale;
      table.append(t);
      cfg["ode"] = {{"rtol", run.rtol}, {"atol", run.atol}, {"seed_lambda", run.seed_lambda},
                    {"seed_order", run.seed_order}};
    } else if (e == "closed") {
      for (double l : grid) {
        CurveRow r;
        r.lambda = l;
        if (rho2)
          r.value = a.beta == 2.0 ? sine2_rho2(l) : sine4_rho2(l);
        else if (delta == 1.0)
          r.value = hp_delta1_density(a.beta, l);
        else
          r.value = 2.0 * pi * (a.beta == 2.0 ? sine2_rho2(l) : sine4_rho2(l));
        r.engine = "closed";
        r.beta = a.beta;
        r.delta = delta;
        table.rows.push_back(r);
      }
    } else {
      SdeConfig sc;
      sc.beta = a.beta;
      sc.delta = delta;
      sc.lambda_grid = grid;
      sc.eps_cut = a.eps_cut;
      sc.dt = a.dt;
      sc.paths = a.paths;
      sc.master_seed = a.seed;
      sc.k_max = a.k_max;
      const auto sim = simulate_paths(sc);
      table.append(rho2 ? mc_pair_correlation(sim) : mc_hp_density(sim));
      cfg["mc"] = {{"paths", sc.paths}, {"dt", sc.dt}, {"eps_cut", sc.eps_cut}, {"k_max", sim.k_max},
                   {"seed", sc.master_seed}, {"monotone_fraction", sim.monotone_fraction}};
    }
  }
  emit(a.format == "json" ? table_json(table, cfg).dump(2) + "\n" : to_csv(table), a.output);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sine_beta pair correlation and HP_{beta,delta} densities"};
  app.require_subcommand(1);

  CurveArgs rho2_args, hp_args;
  auto* rho2 = app.add_subcommand("rho2", "pair correlation rho2(0, lambda) of Sine_beta");
  add_curve_options(rho2, rho2_args, false);
  auto* hp = app.add_subcommand("hpdensity", "one-point density of HP_{beta,delta}");
  add_curve_options(hp, hp_args, true);

  std::string suite = "quick", suite_out;
  std::uint64_t suite_seed = 7;
  auto* validate = app.add_subcommand("validate", "run the acceptance suite");
  validate->add_option("--suite", suite)->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
  validate->add_option("--seed", suite_seed)->capture_default_str();
  validate->add_option("--output,-o", suite_out, "CSV of every computed curve");

  int id_n = 4;
  auto* ids = app.add_subcommand("identities", "exact checks of the matrix identities");
  ids->add_option("--n", id_n)->check(CLI::Range(1, 30))->capture_default_str();

  CurveArgs decay_args;
  std::vector<double> decay_lambdas = {4, 8, 16, 32};
  auto* decay = app.add_subcommand("decay", "decay of the truncated pair correlation");
  decay->add_option("--beta", decay_args.beta)->required();
  decay->add_option("--lambdas", decay_lambdas)->delimiter(',')->capture_default_str();
  decay->add_option("--paths", decay_args.paths)->capture_default_str();
  decay->add_option("--dt", decay_args.dt)->capture_default_str();
  decay->add_option("--eps-cut", decay_args.eps_cut)->capture_default_str();
  decay->add_option("--seed", decay_args.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  try {
    if (rho2->parsed()) return run_curve(rho2_args, true);
    if (hp->parsed()) return run_curve(hp_args, false);

    if (validate->parsed()) {
      SuiteOptions o;
      o.quick = suite == "quick";
      o.seed = suite_seed;
      const auto res = run_suite(o);
      for (const auto& c : res.criteria)
        std::printf("[%s] %2d %s: %s (%.1f s)\n", c.passed ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    c.detail.c_str(), c.seconds);
      if (!suite_out.empty()) emit(to_csv(res.table), suite_out);
      return res.all_passed() ? ok : failed;
    }

    if (ids->parsed()) {
      const auto rep = identity_report(id_n);
      for (const auto& c : rep.checks)
        std::printf("[%s] %s[%d] %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.index, c.detail.c_str());
      return rep.all_passed() ? ok : failed;
    }

    if (decay->parsed()) {
      SdeConfig base;
      base.paths = decay_args.paths;
      base.dt = decay_args.dt;
      base.eps_cut = decay_args.eps_cut;
      base.master_seed = decay_args.seed;
      const auto rep = decay_report(decay_args.beta, decay_lambdas, base);
      std::printf("lambda,value,stderr,deviation,envelope,ratio\n");
      for (std::size_t i = 0; i < rep.lambda.size(); ++i)
        std::printf("%s,%s,%s,%s,%s,%s\n", format_double(rep.lambda[i]).c_str(), format_double(rep.value[i]).c_str(),
                    format_double(rep.stderr_value[i]).c_str(), format_double(rep.deviation[i]).c_str(),
                    format_double(rep.envelope[i]).c_str(), format_double(rep.ratio[i]).c_str());
      std::printf("# fitted c %s, median ratio %s: %s\n", format_double(rep.fitted_c).c_str(),
                  format_double(rep.median_ratio).c_str(), rep.passed ? "pass" : "fail");
      return rep.passed ? ok : failed;
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return usage;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return usage;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return usage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return failed;
  }
  return usage;
}
