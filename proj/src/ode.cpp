#include "sinebeta/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "sinebeta/errors.hpp"
#include "sinebeta/linalg.hpp"

namespace sinebeta {

namespace {

using Vec = std::vector<double>;

// Dormand-Prince 5(4)
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

struct System {
  SystemMatrices s;
  double scale;   // 4/beta
  double source;  // 2(n+1)/beta

  // y = (Re q, Im q); q' = iBq + (4/beta) A q / lambda + 2(n+1)/(beta lambda) e
  void rhs(double x, const Vec& y, Vec& dy) const {
    const int n = s.n;
    const double inv = 1.0 / x;
    for (int k = 0; k < n; ++k) {
      double ar = s.A_diag[k] * y[k], ai = s.A_diag[k] * y[n + k];
      if (k > 0) {
        ar += s.A_sub[k - 1] * y[k - 1];
        ai += s.A_sub[k - 1] * y[n + k - 1];
      }
      if (k + 1 < n) {
        ar += s.A_super[k] * y[k + 1];
        ai += s.A_super[k] * y[n + k + 1];
      }
      dy[k] = -s.B[k] * y[n + k] + scale * ar * inv;
      dy[n + k] = s.B[k] * y[k] + scale * ai * inv;
    }
    dy[0] += source * inv;
  }
};

struct Dense {
  double x0 = 0.0, h = 0.0;
  std::array<Vec, 5> r;

  void value(double x, Vec& out) const {
    const double t = (x - x0) / h, t1 = 1.0 - t;
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = r[0][i] + t * (r[1][i] + t1 * (r[2][i] + t * (r[3][i] + t1 * r[4][i])));
  }

  void derivative(double x, Vec& out) const {
    const double t = (x - x0) / h, t1 = 1.0 - t;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double u = r[3][i] + t1 * r[4][i], du = -r[4][i];
      const double v = r[2][i] + t * u, dv = u + t * du;
      const double w = r[1][i] + t1 * v, dw = -v + t1 * dv;
      out[i] = (w + t * dw) / h;
    }
  }
};

QValue to_q(double lambda, const Vec& y, int n) {
  QValue q;
  q.lambda = lambda;
  q.q.resize(n);
  for (int k = 0; k < n; ++k) q.q[k] = {y[k], y[n + k]};
  return q;
}

}  // namespace

OdeRun integrate_q(int n, double beta, const std::vector<double>& grid, double rtol, double atol,
                   double seed_lambda) {
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  if (!(rtol >= 1e-12) || !(atol > 0.0)) throw DomainError("need rtol >= 1e-12 and atol > 0");
  if (!(seed_lambda >= 1e-3 && seed_lambda <= 1e-1)) throw DomainError("seed point must lie in [1e-3, 1e-1]");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || !std::isfinite(grid[i])) throw DomainError("grid values must be finite and >= 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("grid must be strictly increasing");
  }

  OdeRun run;
  run.n = n;
  run.beta = beta;
  run.lambda_grid = grid;
  run.rtol = rtol;
  run.atol = atol;
  run.seed_lambda = seed_lambda;

  const auto seed = compute_coefficients(n, beta, seed_lambda, std::max(1e-15, atol / 10.0));
  run.seed_order = seed.K();

  const System sys{build_system(n), 4.0 / beta, 2.0 * (n + 1) / beta};
  const int dim = 2 * n;

  std::size_t gi = 0;
  for (; gi < grid.size() && grid[gi] <= seed_lambda; ++gi) {
    run.values.push_back(q_series(seed, grid[gi]));
    for (const auto& z : run.values.back().q) run.max_abs_q = std::max(run.max_abs_q, std::abs(z));
  }
  if (gi == grid.size()) return run;

  Vec y(dim);
  {
    const auto q0 = q_series(seed, seed_lambda);
    for (int k = 0; k < n; ++k) {
      y[k] = q0.q[k].real();
      y[n + k] = q0.q[k].imag();
    }
  }

  const double x_end = grid.back();
  const double hmax = 0.1;
  double x = seed_lambda;
  Vec k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim), yt(dim), y1(dim), ym(dim),
      dm(dim), fm(dim);
  sys.rhs(x, y, k1);
  double h = std::min(hmax, 0.1 * x);
  double err_old = 1e-4;
  bool last_rejected = false;
  Dense dense;
  for (auto& v : dense.r) v.resize(dim);

  long steps = 0;
  while (x < x_end) {
    if (++steps > 50000000) throw StepSizeError("step budget exhausted");
    if (x + h > x_end) h = x_end - x;
    if (h < 1e-14 * x) throw StepSizeError("step size underflow at lambda = " + std::to_string(x));

    for (int i = 0; i < dim; ++i) yt[i] = y[i] + h * a21 * k1[i];
    sys.rhs(x + c2 * h, yt, k2);
    for (int i = 0; i < dim; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    sys.rhs(x + c3 * h, yt, k3);
    for (int i = 0; i < dim; ++i) yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    sys.rhs(x + c4 * h, yt, k4);
    for (int i = 0; i < dim; ++i)
      yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    sys.rhs(x + c5 * h, yt, k5);
    for (int i = 0; i < dim; ++i)
      yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const double xn = x + h;
    sys.rhs(xn, yt, k6);
    for (int i = 0; i < dim; ++i)
      y1[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    sys.rhs(xn, y1, k7);

    double err = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double sk = atol + rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      err += (ei / sk) * (ei / sk);
    }
    err = std::sqrt(err / dim);

    // PI controller
    const double expo = 0.2 - 0.04 * 0.75;
    double fac = std::pow(err, expo) / std::pow(err_old, 0.04) / 0.9;
    fac = std::clamp(fac, 0.2, 10.0);
    double hnew = h / fac;

    if (err <= 1.0) {
      err_old = std::max(err, 1e-4);
      ++run.accepted;
      for (int i = 0; i < dim; ++i) {
        const double ydiff = y1[i] - y[i];
        const double bspl = h * k1[i] - ydiff;
        dense.r[0][i] = y[i];
        dense.r[1][i] = ydiff;
        dense.r[2][i] = bspl;
        dense.r[3][i] = ydiff - h * k7[i] - bspl;
        dense.r[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      dense.x0 = x;
      dense.h = h;

      const double xm = x + 0.5 * h;
      dense.value(xm, ym);
      dense.derivative(xm, dm);
      sys.rhs(xm, ym, fm);
      double defect = 0.0, ynorm = 0.0;
      for (int i = 0; i < dim; ++i) {
        defect += (dm[i] - fm[i]) * (dm[i] - fm[i]);
        ynorm += ym[i] * ym[i];
      }
      const double local_tol = atol + rtol * std::sqrt(ynorm);
      run.max_residual_ratio = std::max(run.max_residual_ratio, h * std::sqrt(defect) / (10.0 * local_tol));

      while (gi < grid.size() && grid[gi] <= xn) {
        Vec out(dim);
        if (grid[gi] == xn)
          out = y1;
        else
          dense.value(grid[gi], out);
        run.values.push_back(to_q(grid[gi], out, n));
        ++gi;
      }
      for (int k = 0; k < n; ++k) run.max_abs_q = std::max(run.max_abs_q, std::hypot(y1[k], y1[n + k]));

      y.swap(y1);
      k1.swap(k7);
      x = xn;
      if (last_rejected) hnew = std::min(hnew, h);
      last_rejected = false;
    } else {
      hnew = h / std::min(10.0, std::pow(err, 0.2) / 0.9);
      if (!std::isfinite(hnew)) hnew = 0.1 * h;
      ++run.rejected;
      last_rejected = true;
    }
    h = std::min(hnew, hmax);
  }
  return run;
}

CurveTable hp_density_ode(const OdeRun& run) {
  const auto sys = build_system(run.n);
  CurveTable t;
  for (const auto& qv : run.values) {
    double vq = 0.0;
    for (int k = 0; k < run.n; ++k) vq += sys.v[k] * qv.q[k].real();
    CurveRow r;
    r.lambda = qv.lambda;
    r.value = (1.0 + 2.0 * vq) / (2.0 * std::numbers::pi);
    r.engine = "ode";
    r.beta = run.beta;
    r.delta = run.n;
    r.order = run.seed_order;
    r.tail_bound = run.atol;
    t.rows.push_back(r);
  }
  return t;
}

}  // namespace sinebeta
