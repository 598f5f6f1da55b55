#include "g2toda/transport.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include <Eigen/Dense>
#include <json.hpp>

#include "g2toda/g2lie.hpp"
#include "g2toda/modelsurface.hpp"

namespace g2toda {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_pm_pi(double a) { return std::remainder(a, 2.0 * kPi); }

// Sixth root of qv with phase closest to the reference branch.
Cd nearest_root(Cd qv, Cd ref) {
  double rad = std::pow(std::abs(qv), 1.0 / 6.0);
  double ang = std::arg(qv) / 6.0;
  Cd best;
  double best_gap = 1e300;
  for (int j = 0; j < 6; ++j) {
    double a = ang + j * kPi / 3.0;
    double gap = std::abs(wrap_pm_pi(a - std::arg(ref)));
    if (gap < best_gap) {
      best_gap = gap;
      best = std::polar(rad, a);
    }
  }
  return best;
}

// 5-point Gauss-Legendre nodes and weights on [-1, 1]
constexpr double kGlx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                            0.5384693101056831, 0.9061798459386640};
constexpr double kGlw[5] = {0.2369268850561891, 0.4786286704993665,
                            0.5688888888888889, 0.4786286704993665,
                            0.2369268850561891};

}  // namespace

std::pair<Cd, Cd> NaturalChart::walk(Cd z) const {
  double rz = std::abs(z);
  if (rz < 0.999 * inner_radius)
    throw std::out_of_range("natural chart: point inside the branch radius");
  double dphi = wrap_pm_pi(std::arg(z) - center);
  if (std::abs(dphi) > half_width + 0.5)
    throw std::out_of_range("natural chart: angle outside the sector");
  double phi_z = center + dphi;

  Cd total = 0.0;
  Cd branch = base_branch;
  // arc at the base radius from the center angle to the target angle, then
  // a radial segment in to (or out to) |z|
  auto leg = [&](auto point, auto speed, double s0, double s1, double scale) {
    double len = std::abs(s1 - s0) * scale;
    int m = std::max(2, static_cast<int>(std::ceil(len / 0.25)));
    for (int i = 0; i < m; ++i) {
      double a = s0 + (s1 - s0) * i / m;
      double b = s0 + (s1 - s0) * (i + 1) / m;
      Cd acc = 0.0;
      for (int g = 0; g < 5; ++g) {
        double s = 0.5 * (a + b) + 0.5 * (b - a) * kGlx[g];
        branch = nearest_root(q.eval(point(s)), branch);
        acc += kGlw[g] * branch * speed(s);
      }
      total += acc * 0.5 * (b - a);
    }
  };

  leg([&](double s) { return std::polar(base_radius, s); },
      [&](double s) { return Cd(0.0, 1.0) * std::polar(base_radius, s); },
      center, phi_z, base_radius);
  leg([&](double s) { return std::polar(s, phi_z); },
      [&](double) { return std::polar(1.0, phi_z); }, base_radius, rz, 1.0);
  branch = nearest_root(q.eval(z), branch);
  return {total, branch};
}

Cd NaturalChart::map(Cd z) const { return base_w + walk(z).first; }

Cd NaturalChart::branch_at(Cd z) const { return walk(z).second; }

Cd NaturalChart::inverse(Cd w) const {
  int n6 = degree + 6;
  // monomial seed with the argument branch near the chart center
  Cd t = w * Cd(n6, 0.0) / (beta * 6.0);
  double target = (n6 / 6.0) * center;
  double arg_t = std::arg(t) + 2.0 * kPi * std::round((target - std::arg(t)) / (2.0 * kPi));
  Cd z = std::polar(std::pow(std::abs(t), 6.0 / n6), (6.0 / n6) * arg_t);
  for (int it = 0; it < 40; ++it) {
    auto [integral, branch] = walk(z);
    Cd f = base_w + integral - w;
    if (std::abs(f) < 1e-11 * std::max(1.0, std::abs(w))) return z;
    z -= f / branch;
  }
  throw std::runtime_error("natural chart: inverse iteration did not converge");
}

double NaturalChart::chart_angle(double z_angle) const {
  double phi = center + wrap_pm_pi(z_angle - center);
  return ((degree + 6) / 6.0) * phi - (index - 1) * kPi / 3.0;
}

bool NaturalChart::contains_angle(double z_angle) const {
  return std::abs(wrap_pm_pi(z_angle - center)) < half_width;
}

std::vector<NaturalChart> charts(const SexticPoly& q) {
  if (!q.monic()) throw std::invalid_argument("charts: differential must be monic");
  int n = q.degree();
  int n6 = n + 6;
  double inner = std::max(1.0, q.unit_sublevel_radius());
  double base_radius = std::max(3.0, 1.5 * inner);

  std::vector<NaturalChart> out;
  out.reserve(n6);
  for (int k = 1; k <= n6; ++k) {
    NaturalChart ch;
    ch.index = k;
    ch.degree = n;
    ch.center = (2.0 * k + 1.0) * kPi / n6;
    ch.half_width = 3.0 * kPi / n6;
    ch.beta = std::polar(1.0, -2.0 * kPi * (k - 1) / 6.0);
    ch.inner_radius = inner;
    ch.base_radius = base_radius;
    ch.q = q;
    ch.base_point = std::polar(base_radius, ch.center);

    // branch at the base matched to the monomial phase beta z^{n/6}
    double want = std::arg(ch.beta) + n * ch.center / 6.0;
    Cd qb = q.eval(ch.base_point);
    Cd root = nearest_root(qb, std::polar(1.0, want));
    if (std::abs(wrap_pm_pi(std::arg(root) - want)) > kPi / 6.0)
      throw std::runtime_error("charts: base branch is not monomial-dominated");
    ch.base_branch = root;
    ch.base_w = ch.beta * (6.0 / n6) *
                std::polar(std::pow(base_radius, n6 / 6.0), (n6 / 6.0) * ch.center);
    out.push_back(std::move(ch));
  }
  return out;
}

double stability_margin(double chart_angle) {
  return std::abs(std::remainder(chart_angle, kPi / 6.0));
}

std::vector<Ray> vertex_rays(const SexticPoly& q) {
  if (!q.monic()) throw std::invalid_argument("vertex_rays: differential must be monic");
  int n6 = q.degree() + 6;
  std::vector<Ray> out;
  out.reserve(n6);
  for (int k = 1; k <= n6; ++k) {
    Ray r;
    r.angle = std::fmod(2.0 * kPi * (k + 0.25) / n6, 2.0 * kPi);
    r.chart = k;
    r.chart_angle = 5.0 * kPi / 12.0;
    r.stable = stability_margin(r.chart_angle) >= kPi / 24.0;
    r.marked = (k == 1);
    out.push_back(r);
  }
  return out;
}

TransportPath ray_path(double angle) {
  Cd dir = std::polar(1.0, angle);
  return [dir](double t) { return PathSample{t * dir, dir}; };
}

namespace {

struct EdgeData {
  double t0 = 0.0;
  double dt = 0.0;
  Cd z_start;  // z at t0
  std::vector<Cd> z, v, a;
};

}  // namespace

TransportPath edge_ray(const NaturalChart& chart, double chart_theta,
                       double y0, double t_max) {
  if (chart_theta <= 0.0 || chart_theta >= kPi)
    throw std::invalid_argument("edge_ray: chart angle must lie in (0, pi)");
  int n6 = chart.degree + 6;
  double w_inner = (6.0 / n6) * std::pow(chart.inner_radius, n6 / 6.0);
  double t0 = std::max(1.0, 1.2 * w_inner + std::abs(y0));
  if (t_max < t0 + 1.0)
    throw std::invalid_argument("edge_ray: t_max too small for this chart");
  Cd dir = std::polar(1.0, chart_theta);
  Cd w0 = t0 * dir + Cd(0.0, y0);
  if (w0.imag() <= 0.05) throw std::invalid_argument("edge_ray: offset exits the chart");

  auto data = std::make_shared<EdgeData>();
  data->t0 = t0;
  data->dt = 0.004;
  data->z_start = chart.inverse(w0);

  // advance dz/dt = e^{i theta}/q^{1/6} with the branch tracked continuously
  Cd f = chart.branch_at(data->z_start);
  Cd z = data->z_start;
  int steps = static_cast<int>(std::ceil((t_max - t0) / data->dt)) + 1;
  data->z.reserve(steps + 1);
  data->v.reserve(steps + 1);
  data->a.reserve(steps + 1);
  const SexticPoly& q = chart.q;
  auto record = [&](Cd zz, Cd ff) {
    data->z.push_back(zz);
    data->v.push_back(dir / ff);
    data->a.push_back(-dir * dir * q.deriv(zz) / (6.0 * q.eval(zz) * ff * ff));
  };
  record(z, f);
  for (int i = 0; i < steps; ++i) {
    double h = data->dt;
    Cd k1 = dir / f;
    Cd f2 = nearest_root(q.eval(z + 0.5 * h * k1), f);
    Cd k2 = dir / f2;
    Cd f3 = nearest_root(q.eval(z + 0.5 * h * k2), f);
    Cd k3 = dir / f3;
    Cd f4 = nearest_root(q.eval(z + h * k3), f);
    Cd k4 = dir / f4;
    z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    f = nearest_root(q.eval(z), f);
    record(z, f);
  }

  return [data](double t) -> PathSample {
    if (t < data->t0) {
      double u = t / data->t0;
      return PathSample{u * data->z_start, data->z_start / data->t0};
    }
    double s = (t - data->t0) / data->dt;
    int i = std::min(static_cast<int>(s), static_cast<int>(data->z.size()) - 2);
    if (i < 0) i = 0;
    double u = s - i;
    double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
    double h10 = u * (1.0 - u) * (1.0 - u);
    double h01 = u * u * (3.0 - 2.0 * u);
    double h11 = u * u * (u - 1.0);
    Cd dt(data->dt, 0.0);
    Cd zz = h00 * data->z[i] + h10 * dt * data->v[i] + h01 * data->z[i + 1] +
            h11 * dt * data->v[i + 1];
    Cd vv = h00 * data->v[i] + h10 * dt * data->a[i] + h01 * data->v[i + 1] +
            h11 * dt * data->a[i + 1];
    return PathSample{zz, vv};
  };
}

std::vector<Ray> edge_rays(const SexticPoly& q, int chart_index,
                           const std::vector<double>& y0_list,
                           double chart_theta) {
  int n6 = q.degree() + 6;
  if (chart_index < 1 || chart_index > n6)
    throw std::invalid_argument("edge_rays: chart index out of range");
  double z_angle =
      (6.0 / n6) * (chart_theta + (chart_index - 1) * kPi / 3.0);
  std::vector<Ray> out;
  out.reserve(y0_list.size());
  for (std::size_t i = 0; i < y0_list.size(); ++i) {
    Ray r;
    r.angle = z_angle;
    r.chart = chart_index;
    r.chart_angle = chart_theta;
    r.stable = stability_margin(chart_theta) >= kPi / 24.0;
    r.marked = false;
    out.push_back(r);
  }
  return out;
}

ConnectionMatrices connection(const TodaGrid& grid, Cd z) {
  double margin = 3.0 * grid.h();
  if (std::abs(z) > grid.radius - margin)
    throw std::out_of_range("connection: stencil leaves the grid");
  double r = grid.sample_r(z);
  double s = grid.sample_s(z);
  HiggsData hd = higgs(grid.q.eval(z), r, s);
  Cd lr = grid.sample_dlogr(z);
  Cd ls = grid.sample_dlogs(z);
  Mat7 dh = Mat7::Zero();
  dh(0, 0) = -lr - ls;
  dh(1, 1) = -lr;
  dh(2, 2) = -ls;
  dh(4, 4) = ls;
  dh(5, 5) = lr;
  dh(6, 6) = lr + ls;
  return {hd.phi + dh, hd.phi_adj};
}

namespace {

// Dormand-Prince 5(4) coefficients
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA2[] = {1.0 / 5};
constexpr double kA3[] = {3.0 / 40, 9.0 / 40};
constexpr double kA4[] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
constexpr double kA5[] = {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561,
                          -212.0 / 729};
constexpr double kA6[] = {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247,
                          49.0 / 176, -5103.0 / 18656};
constexpr double kB[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192,
                          -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kE[7] = {71.0 / 57600, 0.0, -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

double mat_norm(const Mat7& m) { return m.cwiseAbs().maxCoeff(); }

class Transporter {
 public:
  Transporter(const TodaGrid& grid, const TransportPath& path, double tol)
      : grid_(grid), path_(path), tol_(tol) {
    psi_.setIdentity();
    a1_ = a_at(0.0);
    k1_ = a1_;  // psi = id
    h_ = std::min(0.01, 0.1 / std::max(1e-12, mat_norm(a1_)));
  }

  void advance_to(double target) {
    while (t_ < target) {
      double h = std::min({h_, 0.1 / std::max(1e-12, mat_norm(a1_)), target - t_});
      for (;;) {
        if (h < 1e-9)
          throw std::runtime_error("transport: step-size underflow");
        Mat7 k2 = a_mul(t_ + kC[1] * h, psi_ + h * kA2[0] * k1_);
        Mat7 k3 = a_mul(t_ + kC[2] * h, psi_ + h * (kA3[0] * k1_ + kA3[1] * k2));
        Mat7 k4 = a_mul(t_ + kC[3] * h,
                        psi_ + h * (kA4[0] * k1_ + kA4[1] * k2 + kA4[2] * k3));
        Mat7 k5 = a_mul(t_ + kC[4] * h, psi_ + h * (kA5[0] * k1_ + kA5[1] * k2 +
                                                    kA5[2] * k3 + kA5[3] * k4));
        Mat7 k6 = a_mul(t_ + kC[5] * h,
                        psi_ + h * (kA6[0] * k1_ + kA6[1] * k2 + kA6[2] * k3 +
                                    kA6[3] * k4 + kA6[4] * k5));
        Mat7 y5 = psi_ + h * (kB[0] * k1_ + kB[2] * k3 + kB[3] * k4 +
                              kB[4] * k5 + kB[5] * k6);
        Mat7 a7 = a_at(t_ + h);
        Mat7 k7 = y5 * a7;
        Mat7 err_m = h * (kE[0] * k1_ + kE[2] * k3 + kE[3] * k4 + kE[4] * k5 +
                          kE[5] * k6 + kE[6] * k7);
        double err = mat_norm(err_m) / std::max(1e-300, mat_norm(y5));
        double fac = 0.9 * std::pow(tol_ / std::max(err, 1e-300), 0.2);
        fac = std::clamp(fac, 0.2, 5.0);
        if (err <= tol_) {
          t_ += h;
          double m = mat_norm(y5);
          psi_ = y5 / m;
          sigma_ += std::log(m);
          k1_ = k7 / m;
          a1_ = a7;
          h_ = h * fac;
          track_drift();
          break;
        }
        h *= fac;
      }
    }
  }

  const Mat7& psi() const { return psi_; }
  double log_scale() const { return sigma_; }
  double q_drift() const { return q_drift_; }

 private:
  Mat7 a_at(double t) const {
    PathSample p = path_(t);
    ConnectionMatrices cm = connection(grid_, p.z);
    return cm.a_z * p.v + cm.a_zbar * std::conj(p.v);
  }
  Mat7 a_mul(double t, const Mat7& y) const { return y * a_at(t); }

  void track_drift() {
    if (2.0 * sigma_ > 18.0) return;
    Vec7 v = psi_.col(3);
    Cplx qv = qform_im(ImVector(v, Basis::ComplexB));
    q_drift_ = std::max(q_drift_, std::abs(qv * std::exp(2.0 * sigma_) - 1.0));
  }

  const TodaGrid& grid_;
  const TransportPath& path_;
  double tol_;
  Mat7 psi_, k1_, a1_;
  double t_ = 0.0;
  double h_ = 0.01;
  double sigma_ = 0.0;
  double q_drift_ = 0.0;
};

}  // namespace

TransportResult transport_nu(const TodaGrid& grid, const TransportPath& path,
                             const TransportConfig& cfg) {
  Transporter tr(grid, path, cfg.tol);

  Cd z0 = path(0.0).z;
  auto hw = h_weights(grid.sample_r(z0), grid.sample_s(z0));
  Vec7 h_half;
  for (int i = 0; i < 7; ++i) h_half(i) = std::sqrt(hw[i]);
  const Mat7& ub = frame(Basis::ComplexB);

  std::array<double, 3> times;
  for (int i = 0; i < 3; ++i) times[i] = cfg.sample_fracs[i] * cfg.t_end;
  std::sort(times.begin(), times.end());

  TransportResult res;
  std::array<Vec7d, 3> xs;
  for (int i = 0; i < 3; ++i) {
    tr.advance_to(times[i]);
    Vec7 y = ub * h_half.asDiagonal() * Vec7(tr.psi().col(3));
    double scale = y.norm();
    res.im_residual = y.imag().norm() / scale;
    xs[i] = y.real() / y.real().norm();
  }
  res.cauchy = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      res.cauchy = std::max(res.cauchy, projective_angle(xs[i], xs[j]));
  res.limit = xs[2];
  res.converged = res.cauchy < cfg.cauchy_tol;
  res.log_scale = tr.log_scale();
  res.q_drift = tr.q_drift();
  Vec7 lim_c = res.limit.cast<Cplx>();
  res.limit_qform = qform_im(ImVector(lim_c, Basis::StandardM)).real();
  return res;
}

Mat7 transport_frame(const TodaGrid& grid, const TransportPath& path,
                     double t_end, double tol, double* log_scale) {
  Transporter tr(grid, path, tol);
  tr.advance_to(t_end);
  if (log_scale) *log_scale = tr.log_scale();
  return tr.psi();
}

std::string ray_report_json(const Ray& ray, const TransportResult& res) {
  nlohmann::ordered_json j;
  j["angle"] = ray.angle;
  j["stable"] = ray.stable;
  j["limit_vector"] = std::vector<double>(res.limit.data(), res.limit.data() + 7);
  j["cauchy"] = res.cauchy;
  j["log_scale"] = res.log_scale;
  return j.dump();
}

}  // namespace g2toda
