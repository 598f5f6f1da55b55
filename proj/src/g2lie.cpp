#include "g2toda/g2lie.hpp"

#include <cmath>
#include <stdexcept>

namespace g2toda {
namespace {

const Cplx kSqrtM2(0.0, std::sqrt(2.0));  // sqrt(-2)
const Cplx kSqrtM6(0.0, std::sqrt(6.0));  // sqrt(-6)

Mat7 upper_band(int k, std::initializer_list<Cplx> vals) {
  Mat7 m = Mat7::Zero();
  int i = 0;
  for (Cplx v : vals) {
    m(i, i + k) = v;
    ++i;
  }
  return m;
}

Mat7 diag7(std::initializer_list<double> vals) {
  Mat7 m = Mat7::Zero();
  int i = 0;
  for (double v : vals) m(i, i) = v, ++i;
  return m;
}

ChevalleyTriple make_triple(const Mat7& e) {
  ChevalleyTriple t;
  t.e = e;
  t.e_neg = e.adjoint();
  t.t = commutator(t.e, t.e_neg);
  return t;
}

std::array<ChevalleyTriple, 6> build_roots() {
  std::array<ChevalleyTriple, 6> r;
  r[0] = make_triple(upper_band(1, {1.0, 0.0, kSqrtM2, kSqrtM2, 0.0, 1.0}));
  r[1] = make_triple(upper_band(1, {0.0, 1.0, 0.0, 0.0, 1.0, 0.0}));
  r[2] = make_triple(upper_band(2, {1.0, -kSqrtM2, 0.0, kSqrtM2, -1.0}));
  r[3] = make_triple(upper_band(3, {kSqrtM2, 1.0, 1.0, kSqrtM2}));
  r[4] = make_triple(upper_band(4, {1.0, 0.0, -1.0}));
  r[5] = make_triple(upper_band(5, {1.0, 1.0}));
  return r;
}

const std::array<ChevalleyTriple, 6>& root_table() {
  static const std::array<ChevalleyTriple, 6> t = build_roots();
  return t;
}

Mat7 exchange() {
  Mat7 q = Mat7::Zero();
  for (int i = 0; i < 7; ++i) q(i, 6 - i) = 1.0;
  return q;
}

}  // namespace

int root_height(Root r) {
  switch (r) {
    case Root::Beta:
    case Root::Alpha:
      return 1;
    case Root::AlphaBeta:
      return 2;
    case Root::Alpha2Beta:
      return 3;
    case Root::Alpha3Beta:
      return 4;
    case Root::TwoAlpha3Beta:
      return 5;
  }
  throw std::invalid_argument("g2lie: unknown root label");
}

const ChevalleyTriple& chevalley(Root r) {
  int i = static_cast<int>(r);
  if (i < 0 || i >= 6) throw std::invalid_argument("g2lie: unknown root label");
  return root_table()[i];
}

Mat7 CsaElement::matrix() const {
  Mat7 m = Mat7::Zero();
  m(0, 0) = r + s;
  m(1, 1) = r;
  m(2, 2) = s;
  m(4, 4) = -s;
  m(5, 5) = -r;
  m(6, 6) = -r - s;
  return m;
}

const Principal3DS& principal_3ds() {
  static const Principal3DS p = [] {
    Principal3DS p;
    p.x = diag7({3, 2, 1, 0, -1, -2, -3});
    const double s3 = std::sqrt(3.0), s5 = std::sqrt(5.0);
    p.e = upper_band(1, {s3, s5, kSqrtM6, kSqrtM6, s5, s3});
    p.et = Mat7::Zero();
    const Cplx sub[6] = {s3, s5, -kSqrtM6, -kSqrtM6, s5, s3};
    for (int i = 0; i < 6; ++i) p.et(i + 1, i) = sub[i];
    return p;
  }();
  return p;
}

HiggsData higgs(Cplx qval, double r, double s) {
  if (!(r > 0.0) || !(s > 0.0))
    throw std::invalid_argument("g2lie: higgs requires r, s > 0");
  HiggsData h;
  h.qval = qval;
  h.r = r;
  h.s = s;
  h.phi = principal_3ds().et;
  h.phi(0, 5) += qval;
  h.phi(1, 6) += qval;
  const auto hw = h_weights(r, s);
  h.phi_adj = Mat7::Zero();
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b)
      h.phi_adj(a, b) = std::conj(h.phi(b, a)) * (hw[b] / hw[a]);
  return h;
}

Mat7 sigma(const Mat7& a) {
  const Mat7 q = exchange();
  return -(q * a.transpose() * q);
}

Mat7 rho(const Mat7& a) { return -a.adjoint(); }

Mat7 tau(const Mat7& a) { return rho(sigma(a)); }

ImVector tau_V(const ImVector& v) {
  if (v.tag != Basis::ComplexB)
    throw std::invalid_argument("g2lie: tau_V expects ComplexB coordinates");
  ImVector out;
  out.tag = Basis::ComplexB;
  for (int i = 0; i < 7; ++i) out.c[i] = std::conj(v.c[6 - i]);
  return out;
}

ImVector bundle_real_structure(const ImVector& v, double r, double s) {
  if (!(r > 0.0) || !(s > 0.0))
    throw std::invalid_argument("g2lie: bundle real structure requires r, s > 0");
  if (v.tag != Basis::ComplexB)
    throw std::invalid_argument("g2lie: bundle real structure expects ComplexB");
  const auto hw = h_weights(r, s);
  ImVector out;
  out.tag = Basis::ComplexB;
  for (int i = 0; i < 7; ++i) out.c[i] = std::conj(v.c[6 - i]) / hw[i];
  return out;
}

double derivation_defect(const Mat7& a, Basis tag) {
  double worst = 0.0;
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) {
      ImVector ei{Vec7::Unit(i), tag}, ej{Vec7::Unit(j), tag};
      ImVector cij = cross_im(ei, ej);
      ImVector aei{a * ei.c, tag}, aej{a * ej.c, tag};
      Vec7 lhs = a * cij.c;
      Vec7 rhs = cross_im(aei, ej).c + cross_im(ei, aej).c;
      worst = std::max(worst, (lhs - rhs).norm());
    }
  return worst;
}

}  // namespace g2toda
