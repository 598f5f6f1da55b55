#include "g2toda/modelsurface.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "g2toda/g2lie.hpp"

namespace g2toda {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("model data: ") + what);
}

ModelData build_model() {
  ModelData md;
  const double dconst = 5.0 / (6.0 * std::sqrt(3.0));
  md.r0 = std::cbrt(2.0 / 5.0);
  md.s0 = std::cbrt(dconst);
  md.alpha = std::sqrt(6.0 * std::cbrt(dconst));

  const auto h = h_weights(md.r0, md.s0);
  for (int i = 0; i < 7; ++i) md.h0[i] = h[i];

  for (int k = 0; k < 6; ++k) md.eigs[k] = md.alpha * std::polar(1.0, (2 * k + 1) * kPi / 6.0);
  md.eigs[6] = Cplx(0.0);

  md.s = frame_inv(Basis::ComplexB) * frame(Basis::ClockW);
  md.e0 = frame_inv(Basis::ComplexB) * frame(Basis::GradedE0);
  md.e0_inv = frame_inv(Basis::GradedE0) * frame(Basis::ComplexB);

  check((md.s.adjoint() * md.s - Mat7::Identity()).cwiseAbs().maxCoeff() < 1e-12,
        "columns of S must be unitary");
  Mat7 hs = md.s;
  for (int i = 0; i < 7; ++i) hs.row(i) /= std::sqrt(md.h0[i]);
  check((hs - md.e0).cwiseAbs().maxCoeff() < 1e-13, "E0 = H0^{-1/2} S");
  check((md.e0 * md.e0_inv - Mat7::Identity()).cwiseAbs().maxCoeff() < 1e-12,
        "E0 invertibility");

  const HiggsData hd = higgs(Cplx(1.0), md.r0, md.s0);
  Mat7 phi0 = md.e0 * md.eigs.asDiagonal() * md.e0_inv;
  Mat7 phi0_adj = md.e0 * md.eigs.conjugate().asDiagonal() * md.e0_inv;
  check((phi0 - hd.phi).cwiseAbs().maxCoeff() < 1e-10, "phi0 = E0 D E0^{-1}");
  check((phi0_adj - hd.phi_adj).cwiseAbs().maxCoeff() < 1e-10,
        "phi0 adjoint = E0 conj(D) E0^{-1}");
  return md;
}

}  // namespace

const ModelData& model_data() {
  static const ModelData md = build_model();
  return md;
}

std::tuple<double, double, Vec7d> model_metric() {
  const ModelData& md = model_data();
  return {md.r0, md.s0, md.h0};
}

std::array<double, 7> script_d(double theta) {
  std::array<double, 7> d{};
  for (int k = 0; k < 6; ++k) d[k] = std::cos(theta + (2 * k + 1) * kPi / 6.0);
  d[6] = 0.0;
  return d;
}

Mat7 psi0(Cplx z) {
  const ModelData& md = model_data();
  Vec7 e;
  for (int k = 0; k < 7; ++k) e[k] = std::exp(2.0 * (z * md.eigs[k]).real());
  return md.e0 * e.asDiagonal() * md.e0_inv;
}

ImVector nu0(Cplx z) {
  const ModelData& md = model_data();
  const double scale = 1.0 / std::sqrt(6.0);
  Vec7 c = Vec7::Zero();
  for (int k = 0; k < 6; ++k) {
    const double ck = 2.0 * md.alpha * (z * std::polar(1.0, (2 * k + 1) * kPi / 6.0)).real();
    c[k] = (k % 2 == 0 ? -scale : scale) * std::exp(ck);
  }
  return ImVector(c, Basis::GradedE0);
}

ImVector model_limit(PathKind kind, double theta, double y0) {
  const ModelData& md = model_data();
  const double step = kPi / 3.0;
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0) t += 2.0 * kPi;

  Vec7 c = Vec7::Zero();
  if (kind == PathKind::Sector) {
    int m = static_cast<int>(std::floor(t / step));
    if (m > 5) m = 5;
    const double dist = std::min(t - m * step, (m + 1) * step - t);
    if (dist < 1e-9)
      throw std::invalid_argument("model_limit: sector direction lies on a critical angle");
    c[5 - m] = (m % 2 == 0) ? 1.0 : -1.0;
    return ImVector(c, Basis::GradedE0);
  }

  const long mr = std::lround(t / step);
  if (std::abs(t - mr * step) > 1e-9)
    throw std::invalid_argument("model_limit: edge direction must be a multiple of pi/3");
  const int m = static_cast<int>(mr % 6);
  const double a = md.alpha;
  switch (m) {
    case 0: c[0] = -1.0; c[5] = std::exp(2.0 * a * y0); break;
    case 1: c[5] = 1.0;  c[4] = -std::exp(a * y0); break;
    case 2: c[4] = -1.0; c[3] = std::exp(-a * y0); break;
    case 3: c[3] = 1.0;  c[2] = -std::exp(-2.0 * a * y0); break;
    case 4: c[2] = -1.0; c[1] = std::exp(-a * y0); break;
    default: c[1] = 1.0; c[0] = -std::exp(a * y0); break;
  }
  return ImVector(c, Basis::GradedE0);
}

std::array<ImVector, 6> model_hexagon() {
  std::array<ImVector, 6> v;
  for (int k = 0; k < 6; ++k) {
    Vec7 c = Vec7::Zero();
    c[k] = 1.0;
    v[k] = ImVector(c, Basis::GradedE0);
  }
  return v;
}

Vec7d graded_real_point(const ImVector& v, double tol) {
  if (v.tag != Basis::GradedE0)
    throw std::invalid_argument("graded_real_point: expected GradedE0 coordinates");
  const double scale = v.c.cwiseAbs().maxCoeff();
  if (v.c.imag().cwiseAbs().maxCoeff() > tol * scale)
    throw std::invalid_argument("graded_real_point: coordinates are not real");
  return frame(Basis::ClockW).real() * v.c.real();
}

double projective_angle(const Vec7d& a, const Vec7d& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("projective_angle: zero vector");
  const Vec7d u = a / na, v = b / nb;
  const double d = std::min((u - v).norm(), (u + v).norm());
  return 2.0 * std::asin(std::min(1.0, 0.5 * d));
}

}  // namespace g2toda
