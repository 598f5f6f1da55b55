#include "g2toda/toda.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace g2toda {

namespace {

constexpr double kExpClamp = 50.0;

double clamped_exp(double a, bool* clamped) {
  if (a > kExpClamp || a < -kExpClamp) {
    if (clamped) *clamped = true;
    a = std::clamp(a, -kExpClamp, kExpClamp);
  }
  return std::exp(a);
}

int logical_degree(const std::vector<Cd>& c) {
  int d = static_cast<int>(c.size()) - 1;
  while (d > 0 && c[d] == Cd(0.0)) --d;
  return d;
}

}  // namespace

int SexticPoly::degree() const { return logical_degree(coeffs); }

bool SexticPoly::monic() const {
  return coeffs[degree()] == Cd(1.0);
}

bool SexticPoly::centered() const {
  int d = degree();
  return d == 0 || coeffs[d - 1] == Cd(0.0);
}

Cd SexticPoly::eval(Cd z) const {
  Cd acc(0.0);
  for (int k = degree(); k >= 0; --k) acc = acc * z + coeffs[k];
  return acc;
}

Cd SexticPoly::deriv(Cd z) const {
  Cd acc(0.0);
  for (int k = degree(); k >= 1; --k) acc = acc * z + double(k) * coeffs[k];
  return acc;
}

std::vector<Cd> SexticPoly::roots() const {
  int n = degree();
  if (n == 0) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -coeffs[i] / coeffs[n];
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<Cd> out(n);
  for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()(i);
  return out;
}

double SexticPoly::unit_sublevel_radius() const {
  int n = degree();
  if (n == 0) return 0.0;
  double rb = 0.0;
  for (Cd w : roots()) rb = std::max(rb, std::abs(w));
  double an = std::abs(coeffs[n]);
  // |q(z)| >= |a_n| (|z| - rb)^n, so |q| > 1 beyond this radius
  return rb + std::max(1.0, std::pow(1.0 / an, 1.0 / n));
}

TodaConstants constants() {
  double d = 5.0 / (6.0 * std::sqrt(3.0));
  double c = std::pow(0.4, 0.4) * std::pow(d, 0.2);
  double b = 3.0 * std::cbrt(d);
  return {c, d, b, std::sqrt(2.0 * b)};
}

std::pair<double, double> rhs(double u1, double u2, double absq2,
                              bool* clamped) {
  double e1 = clamped_exp(u1 - 3.0 * u2, clamped);
  double e2 = clamped_exp(-2.0 * u1, clamped);
  double e3 = clamped_exp(2.0 * u2, clamped);
  return {0.5 * (5.0 * e1 - 2.0 * e2 * absq2), 0.5 * (6.0 * e3 - 5.0 * e1)};
}

double sub_solution_m(const SexticPoly& q) {
  if (q.degree() == 0) return 0.0;
  return std::max(2.0 * q.unit_sublevel_radius(), 1.9);
}

std::pair<double, double> sub_solution(const SexticPoly& q, Cd z) {
  auto [c, d, b, alpha] = constants();
  (void)b;
  (void)alpha;
  double aq = std::abs(q.eval(z));
  double v1, v2;
  if (aq == 0.0) {
    v1 = v2 = -std::numeric_limits<double>::infinity();
  } else {
    v1 = (5.0 / 6.0) * std::log(c * aq);
    v2 = (1.0 / 6.0) * std::log(d * aq);
  }
  if (q.degree() == 0) return {v1, v2};
  double m = sub_solution_m(q);
  double r2 = std::norm(z);
  if (r2 >= m * m) return {v1, v2};
  double g = 8.0 * m * m / ((4.0 * m * m - r2) * (4.0 * m * m - r2));
  double lg = std::log(g);
  return {std::max(v1, 2.5 * lg), std::max(v2, 0.5 * lg)};
}

std::pair<double, double> super_solution(const SexticPoly& q, Cd z, double A) {
  auto [c, d, b, alpha] = constants();
  (void)b;
  (void)alpha;
  double x = std::norm(q.eval(z));
  return {(5.0 / 12.0) * std::log(c * c * (x + A)),
          (1.0 / 12.0) * std::log(d * d * (x + 2.0 * A))};
}

namespace {

// super-solution margins; written with expm1/log1p where the naive
// difference of like powers would cancel catastrophically at large |q|
std::pair<double, double> super_margins(double x, double y, double A,
                                        double b) {
  double f1, f2;
  if (x > 100.0 * A) {
    double e1 = 1.25 * std::log1p(A / x) - 0.25 * std::log1p(2.0 * A / x);
    f1 = b * std::pow(x + A, 7.0 / 6.0) * (x * std::expm1(e1)) -
         (5.0 / 12.0) * A * y;
    double e2 = (5.0 / 12.0) * std::log1p(A / (x + A));
    f2 = b * std::pow(x + 2.0 * A, 7.0 / 4.0) * std::pow(x + A, 5.0 / 12.0) *
             std::expm1(e2) -
         (1.0 / 6.0) * A * y;
  } else {
    f1 = b * std::pow(x + A, 29.0 / 12.0) * std::pow(x + 2.0 * A, -0.25) -
         b * std::pow(x + A, 7.0 / 6.0) * x - (5.0 / 12.0) * A * y;
    f2 = -b * std::pow(x + A, 5.0 / 12.0) * std::pow(x + 2.0 * A, 7.0 / 4.0) +
         b * std::pow(x + 2.0 * A, 13.0 / 6.0) - (1.0 / 6.0) * A * y;
  }
  return {f1, f2};
}

}  // namespace

double choose_A(const SexticPoly& q, double radius, int n_nodes) {
  double b = constants().b;
  double h = 2.0 * radius / (n_nodes - 1);
  for (double A = 1.0; A <= double(1ll << 40); A *= 2.0) {
    bool ok = true;
    for (int i = 0; i < n_nodes && ok; ++i) {
      for (int j = 0; j < n_nodes && ok; ++j) {
        Cd z(-radius + j * h, -radius + i * h);
        if (std::abs(z) > radius) continue;
        double x = std::norm(q.eval(z));
        double y = std::norm(q.deriv(z));
        auto [f1, f2] = super_margins(x, y, A, b);
        if (f1 < 0.0 || f2 < 0.0) ok = false;
        auto lo = sub_solution(q, z);
        auto hi = super_solution(q, z, A);
        if (hi.first < lo.first || hi.second < lo.second) ok = false;
      }
    }
    if (ok) return A;
  }
  throw std::runtime_error("choose_A: doubling search exhausted");
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

struct Stencil {
  // offsets and Mehrstellen weights: edges then diagonals
  static constexpr int di[8] = {0, 0, 1, -1, 1, 1, -1, -1};
  static constexpr int dj[8] = {1, -1, 0, 0, 1, -1, 1, -1};
  static constexpr double w[8] = {2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0,
                                  1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
};
constexpr int Stencil::di[8];
constexpr int Stencil::dj[8];
constexpr double Stencil::w[8];

}  // namespace

TodaGrid solve(const SexticPoly& q, const SolveConfig& cfg) {
  if (q.degree() == 0 && q.coeffs[0] == Cd(0.0))
    throw std::invalid_argument("solve: q vanishes identically");
  if (cfg.n < 33 || cfg.n % 2 == 0)
    throw std::invalid_argument("solve: n must be odd and at least 33");
  double need = std::max(q.unit_sublevel_radius(), sub_solution_m(q));
  if (cfg.radius < need + 0.5)
    throw std::invalid_argument("solve: radius too small for this q");

  const int n = cfg.n;
  const int nn = n * n;
  const double h = 2.0 * cfg.radius / (n - 1);
  const double ih2 = 1.0 / (4.0 * h * h);

  TodaGrid g;
  g.radius = cfg.radius;
  g.n = n;
  g.q = q;
  g.a_const = choose_A(q, cfg.radius, n);

  std::vector<double> absq2(nn);
  std::vector<char> in(nn);
  std::vector<int> un(nn, -1);
  int nuk = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int p = i * n + j;
      Cd z = g.z_at(i, j);
      absq2[p] = std::norm(q.eval(z));
      in[p] = std::abs(z) < cfg.radius;
      if (in[p]) un[p] = nuk++;
    }

  g.sub1.resize(nn);
  g.sub2.resize(nn);
  g.sup1.resize(nn);
  g.sup2.resize(nn);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int p = i * n + j;
      Cd z = g.z_at(i, j);
      auto lo = sub_solution(q, z);
      auto hi = super_solution(q, z, g.a_const);
      g.sub1[p] = lo.first;
      g.sub2[p] = lo.second;
      g.sup1[p] = hi.first;
      g.sup2[p] = hi.second;
    }

  // two monotone sequences sharing the Dirichlet data u^- outside the disk
  std::vector<double> up1(g.sup1), up2(g.sup2), lo1(g.sub1), lo2(g.sub2);
  for (int p = 0; p < nn; ++p)
    if (!in[p]) {
      up1[p] = g.sub1[p];
      up2[p] = g.sub2[p];
    }

  // Dirichlet contributions to the right-hand sides, fixed for the run
  Vec bd1 = Vec::Zero(nuk), bd2 = Vec::Zero(nuk);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int p = i * n + j;
      if (!in[p]) continue;
      for (int k = 0; k < 8; ++k) {
        int pq = (i + Stencil::di[k]) * n + (j + Stencil::dj[k]);
        if (in[pq]) continue;
        bd1[un[p]] += Stencil::w[k] * ih2 * g.sub1[pq];
        bd2[un[p]] += Stencil::w[k] * ih2 * g.sub2[pq];
      }
    }

  std::vector<double> mfield(nn, 0.0);
  SpMat amat(nuk, nuk);
  Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper,
                           Eigen::IncompleteCholesky<double>>
      cg;
  cg.setTolerance(1e-12);
  cg.setMaxIterations(2000);

  auto refresh = [&]() {
    // per-node Lipschitz bound of F over the current bracket, shared by
    // both components
    for (int p = 0; p < nn; ++p) {
      if (!in[p]) continue;
      double a1 = std::min(kExpClamp, up1[p] - 3.0 * lo2[p]);
      double a2 = std::min(kExpClamp, -2.0 * lo1[p]);
      double a3 = std::min(kExpClamp, 2.0 * up2[p]);
      double m1 = 10.0 * std::exp(a1) + 2.0 * std::exp(a2) * absq2[p];
      double m2 = 6.0 * std::exp(a3) + 10.0 * std::exp(a1);
      mfield[p] = std::max(m1, m2) + 1.0;
    }
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(9 * nuk);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int p = i * n + j;
        if (!in[p]) continue;
        trip.emplace_back(un[p], un[p], (10.0 / 3.0) * ih2 + mfield[p]);
        for (int k = 0; k < 8; ++k) {
          int pq = (i + Stencil::di[k]) * n + (j + Stencil::dj[k]);
          if (in[pq]) trip.emplace_back(un[p], un[pq], -Stencil::w[k] * ih2);
        }
      }
    amat.setFromTriplets(trip.begin(), trip.end());
    cg.compute(amat);
    if (cg.info() != Eigen::Success)
      throw std::runtime_error("solve: preconditioner setup failed");
  };

  std::vector<double> f1(nn), f2(nn);
  auto eval_f = [&](const std::vector<double>& a1, const std::vector<double>& a2) {
    for (int p = 0; p < nn; ++p) {
      auto fv = rhs(a1[p], a2[p], absq2[p]);
      f1[p] = fv.first;
      f2[p] = fv.second;
    }
  };

  auto bf_at = [&](const std::vector<double>& f, int i, int j) {
    return (2.0 / 3.0) * f[i * n + j] +
           (1.0 / 12.0) * (f[i * n + j + 1] + f[i * n + j - 1] +
                           f[(i + 1) * n + j] + f[(i - 1) * n + j]);
  };

  auto residual_of = [&](const std::vector<double>& a1,
                         const std::vector<double>& a2) {
    eval_f(a1, a2);
    double res = 0.0;
    for (int i = 1; i < n - 1; ++i)
      for (int j = 1; j < n - 1; ++j) {
        int p = i * n + j;
        if (!in[p]) continue;
        double l1 = -(10.0 / 3.0) * a1[p], l2 = -(10.0 / 3.0) * a2[p];
        for (int k = 0; k < 8; ++k) {
          int pq = (i + Stencil::di[k]) * n + (j + Stencil::dj[k]);
          l1 += Stencil::w[k] * a1[pq];
          l2 += Stencil::w[k] * a2[pq];
        }
        res = std::max(res, std::abs(l1 * ih2 - bf_at(f1, i, j)));
        res = std::max(res, std::abs(l2 * ih2 - bf_at(f2, i, j)));
      }
    return res;
  };

  auto step = [&](std::vector<double>& a1, std::vector<double>& a2) {
    eval_f(a1, a2);
    for (int comp = 0; comp < 2; ++comp) {
      auto& arr = comp == 0 ? a1 : a2;
      auto& fld = comp == 0 ? f1 : f2;
      auto& bd = comp == 0 ? bd1 : bd2;
      Vec b(nuk), x0(nuk);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          int p = i * n + j;
          if (!in[p]) continue;
          b[un[p]] = mfield[p] * arr[p] - bf_at(fld, i, j) + bd[un[p]];
          x0[un[p]] = arr[p];
        }
      Vec x = cg.solveWithGuess(b, x0);
      if (cg.info() != Eigen::Success)
        throw std::runtime_error("solve: inner linear solve failed");
      for (int p = 0; p < nn; ++p)
        if (in[p]) arr[p] = x[un[p]];
    }
  };

  g.min_envelope_slack = std::numeric_limits<double>::infinity();
  double res = std::numeric_limits<double>::infinity();
  int outer = 0;
  for (; outer < cfg.max_outer; ++outer) {
    if (outer % cfg.refresh_every == 0) refresh();
    step(up1, up2);
    step(lo1, lo2);
    for (int p = 0; p < nn; ++p) {
      if (!in[p]) continue;
      double s = std::min({g.sup1[p] - up1[p], up1[p] - g.sub1[p],
                           g.sup2[p] - up2[p], up2[p] - g.sub2[p],
                           g.sup1[p] - lo1[p], lo1[p] - g.sub1[p],
                           g.sup2[p] - lo2[p], lo2[p] - g.sub2[p]});
      g.min_envelope_slack = std::min(g.min_envelope_slack, s);
    }
    res = residual_of(up1, up2);
    if (cfg.verbose && outer % 5 == 0) {
      double gap = 0.0;
      for (int p = 0; p < nn; ++p)
        if (in[p])
          gap = std::max(gap,
                         std::max(up1[p] - lo1[p], up2[p] - lo2[p]));
      std::fprintf(stderr, "outer %3d residual %.3e gap %.3e\n", outer, res,
                   gap);
    }
    if (res < cfg.tol) break;
  }
  if (res >= cfg.tol)
    throw std::runtime_error("solve: residual " + std::to_string(res) +
                             " after " + std::to_string(cfg.max_outer) +
                             " sweeps");

  g.u1 = std::move(up1);
  g.u2 = std::move(up2);
  g.residual = res;
  g.outer_iterations = outer + 1;
  return g;
}

namespace {

void lagrange_weights(double xi, double w[4]) {
  w[0] = -(xi - 1.0) * (xi - 2.0) * (xi - 3.0) / 6.0;
  w[1] = xi * (xi - 2.0) * (xi - 3.0) / 2.0;
  w[2] = -xi * (xi - 1.0) * (xi - 3.0) / 2.0;
  w[3] = xi * (xi - 1.0) * (xi - 2.0) / 6.0;
}

struct Patch {
  int i0, j0;
  double wx[4], wy[4];
};

Patch locate(double radius, int n, Cd z, int margin) {
  double h = 2.0 * radius / (n - 1);
  double gx = (z.real() + radius) / h;
  double gy = (z.imag() + radius) / h;
  Patch p;
  p.j0 = std::clamp(static_cast<int>(std::floor(gx)) - 1, margin,
                    n - 4 - margin);
  p.i0 = std::clamp(static_cast<int>(std::floor(gy)) - 1, margin,
                    n - 4 - margin);
  lagrange_weights(gx - p.j0, p.wx);
  lagrange_weights(gy - p.i0, p.wy);
  return p;
}

double bicubic(const std::vector<double>& f, int n, const Patch& p) {
  double acc = 0.0;
  for (int a = 0; a < 4; ++a) {
    double row = 0.0;
    for (int b = 0; b < 4; ++b) row += p.wx[b] * f[(p.i0 + a) * n + p.j0 + b];
    acc += p.wy[a] * row;
  }
  return acc;
}

// z-derivative of a grid field: fourth-order differences on the grid,
// bicubic blending of the stencil values
Cd sample_dz(const std::vector<double>& f, double radius, int n, Cd z) {
  Patch p = locate(radius, n, z, 2);
  double h = 2.0 * radius / (n - 1);
  double dx = 0.0, dy = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      int i = p.i0 + a, j = p.j0 + b;
      double w = p.wy[a] * p.wx[b];
      dx += w *
            (f[i * n + j - 2] - 8.0 * f[i * n + j - 1] +
             8.0 * f[i * n + j + 1] - f[i * n + j + 2]) /
            (12.0 * h);
      dy += w *
            (f[(i - 2) * n + j] - 8.0 * f[(i - 1) * n + j] +
             8.0 * f[(i + 1) * n + j] - f[(i + 2) * n + j]) /
            (12.0 * h);
    }
  return 0.5 * Cd(dx, -dy);
}

}  // namespace

double TodaGrid::sample_u1(Cd z) const {
  return bicubic(u1, n, locate(radius, n, z, 0));
}

double TodaGrid::sample_u2(Cd z) const {
  return bicubic(u2, n, locate(radius, n, z, 0));
}

double TodaGrid::sample_r(Cd z) const {
  return std::exp(sample_u1(z) - sample_u2(z));
}

double TodaGrid::sample_s(Cd z) const { return std::exp(2.0 * sample_u2(z)); }

Cd TodaGrid::sample_dlogr(Cd z) const {
  std::vector<double> diff(u1.size());
  for (size_t p = 0; p < diff.size(); ++p) diff[p] = u1[p] - u2[p];
  return sample_dz(diff, radius, n, z);
}

Cd TodaGrid::sample_dlogs(Cd z) const {
  std::vector<double> twice(u2.size());
  for (size_t p = 0; p < twice.size(); ++p) twice[p] = 2.0 * u2[p];
  return sample_dz(twice, radius, n, z);
}

double t_distance(const SexticPoly& q, Cd z) {
  auto rts = q.roots();
  if (rts.empty()) return 1e30;
  double best = 1e30;
  for (Cd w : rts) {
    Cd dz = z - w;
    double len = std::abs(dz);
    if (len == 0.0) {
      best = 0.0;
      continue;
    }
    // arc length of the segment in |q|^{1/3}|dz|^2; substitute s = sigma^4
    // so the root-end sixth-root singularity integrates smoothly
    const int m = 96;
    double hs = 1.0 / m;
    double acc = 0.0;
    for (int k = 0; k <= m; ++k) {
      double sig = k * hs;
      double s = sig * sig * sig * sig;
      double val = std::pow(std::abs(q.eval(w + s * dz)), 1.0 / 6.0) * 4.0 *
                   sig * sig * sig;
      double wt = (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      acc += wt * val;
    }
    best = std::min(best, acc * hs / 3.0 * len);
  }
  return best;
}

double ErrorField::sample(const std::vector<double>& f, Cd z) const {
  Patch p = locate(radius, n, z, 0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (!mask[(p.i0 + a) * n + p.j0 + b])
        return std::numeric_limits<double>::quiet_NaN();
  return bicubic(f, n, p);
}

ErrorField error_fields(const TodaGrid& grid, const SexticPoly& q) {
  ErrorField ef;
  ef.radius = grid.radius;
  ef.n = grid.n;
  int nn = grid.n * grid.n;
  ef.x1.assign(nn, 0.0);
  ef.x2.assign(nn, 0.0);
  ef.mask.assign(nn, 0);
  auto [c, d, b, alpha] = constants();
  (void)b;
  (void)alpha;
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j) {
      int p = i * grid.n + j;
      Cd z = grid.z_at(i, j);
      if (!grid.inside(i, j) || t_distance(q, z) < 1.0) continue;
      double aq = std::abs(q.eval(z));
      double w1 = grid.u1[p] - (5.0 / 6.0) * std::log(c * aq);
      double w2 = grid.u2[p] - (1.0 / 6.0) * std::log(d * aq);
      ef.x1[p] = w1 + w2;
      ef.x2[p] = w1 - 3.0 * w2;
      ef.mask[p] = 1;
    }
  return ef;
}

namespace {

double fit_window(const ErrorField& ef, const std::vector<double>& field,
                  double theta, const SexticPoly& q, double t_lo, double t_hi,
                  int* used) {
  // monotone table t(rho) along the ray
  std::vector<double> rho{1e-6}, tv{t_distance(q, std::polar(1e-6, theta))};
  double rmax = 0.97 * ef.radius;
  for (double r = 0.05; r < rmax; r += 0.05) {
    rho.push_back(r);
    tv.push_back(t_distance(q, std::polar(r, theta)));
    if (tv.back() > t_hi + 0.3) break;
  }
  if (tv.back() < t_hi)
    throw std::runtime_error("decay_fit: window exceeds the grid");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (double t = t_lo; t <= t_hi + 1e-12; t += 0.04) {
    auto it = std::lower_bound(tv.begin(), tv.end(), t);
    if (it == tv.begin() || it == tv.end()) continue;
    size_t k = it - tv.begin();
    double frac = (t - tv[k - 1]) / (tv[k] - tv[k - 1]);
    double r = rho[k - 1] + frac * (rho[k] - rho[k - 1]);
    double x = ef.sample(field, std::polar(r, theta));
    if (!std::isfinite(x) || std::abs(x) <= 1e-13) continue;
    double yv = std::log(std::abs(x) * std::sqrt(t));
    sx += t;
    sy += yv;
    sxx += t * t;
    sxy += t * yv;
    ++m;
  }
  if (m < 6) throw std::runtime_error("decay_fit: too few usable samples");
  if (used) *used = m;
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

DecayFit decay_fit(const ErrorField& ef, double ray_angle,
                   const SexticPoly& q) {
  DecayFit out;
  out.rate_x1 = fit_window(ef, ef.x1, ray_angle, q, 1.5, 4.0, &out.n_x1);
  out.rate_x2 = fit_window(ef, ef.x2, ray_angle, q, 0.8, 2.4, &out.n_x2);
  return out;
}

void save_solution(const TodaGrid& grid, const std::string& path) {
  nlohmann::ordered_json j;
  j["radius"] = grid.radius;
  j["n_nodes"] = grid.n;
  auto coeffs = nlohmann::ordered_json::array();
  for (Cd a : grid.q.coeffs)
    coeffs.push_back({a.real(), a.imag()});
  j["q_coeffs"] = coeffs;
  j["u1"] = grid.u1;
  j["u2"] = grid.u2;
  j["residual"] = grid.residual;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_solution: cannot open " + path);
  out << j.dump() << "\n";
}

TodaGrid load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_solution: cannot open " + path);
  nlohmann::json j;
  in >> j;
  TodaGrid g;
  g.radius = j.at("radius").get<double>();
  g.n = j.at("n_nodes").get<int>();
  g.q.coeffs.clear();
  for (const auto& pair : j.at("q_coeffs"))
    g.q.coeffs.push_back(Cd(pair.at(0).get<double>(), pair.at(1).get<double>()));
  if (g.q.coeffs.empty()) g.q.coeffs.push_back(Cd(0.0));
  g.u1 = j.at("u1").get<std::vector<double>>();
  g.u2 = j.at("u2").get<std::vector<double>>();
  g.residual = j.at("residual").get<double>();
  if (g.n <= 0 || g.u1.size() != size_t(g.n) * g.n ||
      g.u2.size() != size_t(g.n) * g.n)
    throw std::runtime_error("load_solution: inconsistent dimensions");
  return g;
}

}  // namespace g2toda
