#pragma once

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

#include "g2toda/rational.hpp"

namespace g2toda {

using Cplx = std::complex<double>;
using Vec7 = Eigen::Matrix<Cplx, 7, 1>;
using Mat7 = Eigen::Matrix<Cplx, 7, 7>;
using Vec7d = Eigen::Matrix<double, 7, 1>;
using Mat7d = Eigen::Matrix<double, 7, 7>;

enum class Basis { StandardM, ComplexB, ClockW, ClockC, GradedE0 };

// Split octonion in the standard multiplication basis M = (1,i,j,k,l,li,lj,lk),
// written as a pair of split-quaternion-free quaternions: x = a + l b with
// (a,b)(c,d) = (ac + d b*, a* d + c b).
template <class S>
struct SplitOctonion {
  std::array<S, 8> c{};

  SplitOctonion() = default;
  explicit SplitOctonion(std::array<S, 8> coords) : c(std::move(coords)) {}

  static SplitOctonion unit(int idx) {
    SplitOctonion x;
    x.c[idx] = S(1);
    return x;
  }

  SplitOctonion operator+(const SplitOctonion& o) const {
    SplitOctonion r;
    for (int i = 0; i < 8; ++i) r.c[i] = c[i] + o.c[i];
    return r;
  }
  SplitOctonion operator-(const SplitOctonion& o) const {
    SplitOctonion r;
    for (int i = 0; i < 8; ++i) r.c[i] = c[i] - o.c[i];
    return r;
  }
  SplitOctonion operator*(const S& s) const {
    SplitOctonion r;
    for (int i = 0; i < 8; ++i) r.c[i] = c[i] * s;
    return r;
  }
  bool operator==(const SplitOctonion& o) const { return c == o.c; }
};

using OctQ = SplitOctonion<Rat>;
using OctC = SplitOctonion<Cplx>;

namespace detail {

template <class S>
std::array<S, 4> quat_mul(const std::array<S, 4>& a, const std::array<S, 4>& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

template <class S>
std::array<S, 4> quat_conj(const std::array<S, 4>& a) {
  return {a[0], -a[1], -a[2], -a[3]};
}

}  // namespace detail

template <class S>
SplitOctonion<S> mul(const SplitOctonion<S>& x, const SplitOctonion<S>& y) {
  std::array<S, 4> a{x.c[0], x.c[1], x.c[2], x.c[3]};
  std::array<S, 4> b{x.c[4], x.c[5], x.c[6], x.c[7]};
  std::array<S, 4> cc{y.c[0], y.c[1], y.c[2], y.c[3]};
  std::array<S, 4> d{y.c[4], y.c[5], y.c[6], y.c[7]};
  using detail::quat_conj;
  using detail::quat_mul;
  auto re1 = quat_mul(a, cc);
  auto re2 = quat_mul(d, quat_conj(b));
  auto im1 = quat_mul(quat_conj(a), d);
  auto im2 = quat_mul(cc, b);
  SplitOctonion<S> r;
  for (int i = 0; i < 4; ++i) {
    r.c[i] = re1[i] + re2[i];
    r.c[i + 4] = im1[i] + im2[i];
  }
  return r;
}

template <class S>
SplitOctonion<S> conj(const SplitOctonion<S>& x) {
  SplitOctonion<S> r;
  r.c[0] = x.c[0];
  for (int i = 1; i < 8; ++i) r.c[i] = -x.c[i];
  return r;
}

// q has signature (4,4) on Oct': + on (1,i,j,k), - on (l,li,lj,lk)
template <class S>
S qform(const SplitOctonion<S>& x, const SplitOctonion<S>& y) {
  S acc = S(0);
  for (int i = 0; i < 4; ++i) acc += x.c[i] * y.c[i];
  for (int i = 4; i < 8; ++i) acc -= x.c[i] * y.c[i];
  return acc;
}

template <class S>
S qform(const SplitOctonion<S>& x) {
  return qform(x, x);
}

template <class S>
bool is_imaginary(const SplitOctonion<S>& x) {
  return x.c[0] == S(0);
}

inline bool is_imaginary(const OctC& x) { return std::abs(x.c[0]) < 1e-12; }

// x x y = Im(x . y) for imaginary x,y; skew, orthogonal to both arguments
template <class S>
SplitOctonion<S> cross(const SplitOctonion<S>& x, const SplitOctonion<S>& y) {
  if (!is_imaginary(x) || !is_imaginary(y))
    throw std::invalid_argument("cross requires imaginary octonions");
  SplitOctonion<S> p = mul(x, y);
  p.c[0] = S(0);
  return p;
}

template <class S>
S triple(const SplitOctonion<S>& x, const SplitOctonion<S>& y, const SplitOctonion<S>& z) {
  return qform(cross(x, y), z);
}

// ---- imaginary 7-vectors ----
// StandardM imaginary coordinate order: (i, j, k, l, li, lj, lk)

OctQ to_oct(const Vec7Q& v);
Vec7Q to_vec(const OctQ& x);

Rat dot_im(const Vec7Q& a, const Vec7Q& b);
Rat qform_im(const Vec7Q& a);
Vec7Q cross_im(const Vec7Q& a, const Vec7Q& b);
Rat triple_im(const Vec7Q& a, const Vec7Q& b, const Vec7Q& c);

struct ImVector {
  Vec7 c = Vec7::Zero();
  Basis tag = Basis::StandardM;

  ImVector() = default;
  ImVector(Vec7 coords, Basis b) : c(std::move(coords)), tag(b) {}
};

// frame matrix of a basis: columns are the basis vectors in StandardM coordinates
const Mat7& frame(Basis b);
const Mat7& frame_inv(Basis b);

// harmonic-metric weights h(r,s) = (1/(rs), 1/r, 1/s, 1, s, r, rs) in the
// ComplexB order u_3..u_{-3}
std::array<double, 7> h_weights(double r, double s);

ImVector change_basis(const ImVector& v, Basis to);

// bilinear (not sesquilinear) forms on complexified Im Oct', any declared basis
Cplx dot_im(const ImVector& a, const ImVector& b);
Cplx qform_im(const ImVector& a);
ImVector cross_im(const ImVector& a, const ImVector& b);
Cplx triple_im(const ImVector& a, const ImVector& b, const ImVector& c);

// float cross/dot in StandardM coordinates
Vec7 cross_std(const Vec7& a, const Vec7& b);
Cplx dot_std(const Vec7& a, const Vec7& b);
Vec7d cross_std(const Vec7d& a, const Vec7d& b);
double dot_std(const Vec7d& a, const Vec7d& b);

struct G2Certificate {
  double cross_defect = 0.0;  // max over the 21 imaginary basis pairs
  double det_dev = 0.0;       // |det - 1|
  bool pass = false;
};

struct G2Matrix {
  Mat7 m = Mat7::Identity();
  Basis tag = Basis::StandardM;
  G2Certificate cert;
};

G2Certificate is_g2(const Mat7& m, Basis tag, double tol = 1e-10);
G2Matrix make_g2(const Mat7& m, Basis tag, double tol = 1e-10);

// exact variant: defect must vanish identically (StandardM coordinates)
bool is_g2_exact(const Mat7Q& m);

// triplet models
struct MultBasis {
  std::array<Vec7d, 7> vecs;  // (x, y, xy, z, zx, zy, z(xy)) in StandardM
  G2Matrix map;               // sends the M imaginary basis to vecs
};

MultBasis build_mult_basis(const Vec7d& x, const Vec7d& y, const Vec7d& z, double tol = 1e-10);
G2Matrix stiefel_to_g2(const std::array<Vec7d, 3>& src, const std::array<Vec7d, 3>& dst,
                       double tol = 1e-10);

// null triples: q(u)=q(v)=q(w)=0, pairwise q-orthogonal, u.(v x w) = 1
G2Matrix nulltriple_to_g2(const std::array<Vec7d, 3>& src, const std::array<Vec7d, 3>& dst,
                          double tol = 1e-8);
Mat7Q nulltriple_to_g2_exact(const std::array<Vec7Q, 3>& src, const std::array<Vec7Q, 3>& dst);

std::array<Vec7Q, 7> completion_tuple(const std::array<Vec7Q, 3>& t);
std::array<Vec7d, 7> completion_tuple(const std::array<Vec7d, 3>& t);

// fixed exact graded null basis (x3, x2, x1, x0, x-1, x-2, x-3) built from the
// null triple (x3, x-1, x-2); see ein23 for the index dictionary
const std::array<Vec7Q, 7>& graded_basis();
const Mat7d& graded_frame();      // columns x3..x-3 in StandardM coordinates
const Mat7d& graded_frame_inv();

constexpr double kDefaultTol = 1e-10;

}  // namespace g2toda
