#include "g2toda/octonion.hpp"

#include <cmath>
#include <sstream>

namespace g2toda {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Structure constants of x on the seven imaginary units of M, derived from mul().
// For any pair of distinct units the cross is a single signed unit.
struct CrossTable {
  std::array<std::array<int, 7>, 7> out{};
  std::array<std::array<int, 7>, 7> sgn{};
};

const CrossTable& cross_table() {
  static const CrossTable tbl = [] {
    CrossTable t;
    for (auto& row : t.out) row.fill(-1);
    for (auto& row : t.sgn) row.fill(0);
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        if (i == j) continue;
        OctQ p = cross(OctQ::unit(i + 1), OctQ::unit(j + 1));
        for (int k = 0; k < 7; ++k) {
          if (p.c[k + 1] != 0) {
            t.out[i][j] = k;
            t.sgn[i][j] = p.c[k + 1] > 0 ? 1 : -1;
          }
        }
      }
    return t;
  }();
  return tbl;
}

// q restricted to Im Oct' in StandardM coordinates: diag(+1,+1,+1,-1,-1,-1,-1)
constexpr std::array<double, 7> kSig = {1, 1, 1, -1, -1, -1, -1};

Mat7 build_ub() {
  const double r2 = 1.0 / std::sqrt(2.0);
  const Cplx im(0, 1);
  Mat7 ub = Mat7::Zero();
  // columns u_3 .. u_{-3}; rows (i, j, k, l, li, lj, lk)
  ub(5, 0) = -r2;
  ub(6, 0) = -im * r2;
  ub(1, 1) = r2;
  ub(2, 1) = im * r2;
  ub(3, 2) = r2;
  ub(4, 2) = -im * r2;
  ub(0, 3) = 1.0;
  for (int c = 0; c < 3; ++c)
    for (int r = 0; r < 7; ++r) ub(r, 6 - c) = std::conj(ub(r, c));
  return ub;
}

Cplx xi_pow(int k) {
  return std::polar(1.0, kPi * k / 6.0);
}

// S: rows u_3..u_{-3}, columns (w_1, w_3, w_5, w_7, w_9, w_11, w_0), scaled 1/sqrt6
Mat7 build_s() {
  const double r2 = 1.0 / std::sqrt(2.0);
  const Cplx sq3i(0, std::sqrt(3.0));
  Mat7 s;
  for (int c = 0; c < 6; ++c) {
    s(0, c) = r2;
    s(1, c) = xi_pow(11 - 2 * c);
    s(3, c) = (c % 2 == 0) ? -1.0 : 1.0;
    s(5, c) = xi_pow(1 + 2 * c);
    s(6, c) = r2;
  }
  s(2, 0) = xi_pow(10); s(2, 1) = -1.0; s(2, 2) = xi_pow(2);
  s(2, 3) = xi_pow(10); s(2, 4) = -1.0; s(2, 5) = xi_pow(2);
  s(4, 0) = xi_pow(2);  s(4, 1) = -1.0; s(4, 2) = xi_pow(10);
  s(4, 3) = xi_pow(2);  s(4, 4) = -1.0; s(4, 5) = xi_pow(10);
  s(0, 6) = sq3i;
  s(6, 6) = -sq3i;
  for (int r = 1; r < 6; ++r) s(r, 6) = 0.0;
  return s / std::sqrt(6.0);
}

// W reorders the columns of S to (w_3, w_5, w_1, w_0, w_7, w_11, w_9)
Mat7 build_w(const Mat7& s) {
  Mat7 w;
  const int src[7] = {1, 2, 0, 6, 3, 5, 4};
  for (int c = 0; c < 7; ++c) w.col(c) = s.col(src[c]);
  return w;
}

struct FrameSet {
  std::array<Mat7, 5> f;
  std::array<Mat7, 5> finv;
};

void check(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("octonion basis constants: ") + what);
}

const FrameSet& frames_impl() {
  static const FrameSet fs = [] {
    FrameSet fs;
    const Mat7 ub = build_ub();
    const Mat7 s = build_s();
    const Mat7 w = build_w(s);

    // vacuum constants of the flat Toda solution fix the scaling of the
    // ClockC / GradedE0 frames
    const double dconst = 5.0 / (6.0 * std::sqrt(3.0));
    const double r0 = std::cbrt(2.0 / 5.0);
    const double s0 = std::cbrt(dconst);
    const auto h0 = h_weights(r0, s0);
    Mat7 hinvsqrt = Mat7::Zero();
    for (int i = 0; i < 7; ++i) hinvsqrt(i, i) = 1.0 / std::sqrt(h0[i]);

    fs.f[0] = Mat7::Identity();
    fs.f[1] = ub;
    fs.f[2] = ub * s;
    fs.f[3] = ub * hinvsqrt * w;
    fs.f[4] = ub * hinvsqrt * s;

    // startup validation of the defining relations
    check((ub * s).imag().cwiseAbs().maxCoeff() < 1e-14, "ClockW frame must be real");
    check((w.adjoint() * w - Mat7::Identity()).cwiseAbs().maxCoeff() < 1e-14,
          "W must be unitary");
    // Q W conj = W with Q the exchange matrix
    Mat7 qw = Mat7::Zero();
    for (int i = 0; i < 7; ++i) qw.row(i) = w.row(6 - i).conjugate();
    check((qw - w).cwiseAbs().maxCoeff() < 1e-14, "Q conj(W) = W");
    // Gram of the Baraglia basis is antidiagonal (-1,1,-1,1,-1,1,-1)
    Mat7 sig = Mat7::Zero();
    for (int i = 0; i < 7; ++i) sig(i, i) = kSig[i];
    Mat7 gb = ub.transpose() * sig * ub;
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        Cplx wantv = (i + j == 6) ? Cplx(i % 2 == 0 ? -1.0 : 1.0) : Cplx(0);
        check(std::abs(gb(i, j) - wantv) < 1e-14, "ComplexB Gram");
      }
    // Gram in the W basis is -Q
    Mat7 gw = w.transpose() * gb * w;
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        check(std::abs(gw(i, j) - (i + j == 6 ? Cplx(-1) : Cplx(0))) < 1e-13,
              "ClockW Gram = -Q");
    // the torus weights pair to 1 across the antidiagonal, so the scaled
    // frames keep the same Gram as their unscaled parents
    for (int i = 0; i < 7; ++i)
      check(std::abs(h0[i] * h0[6 - i] - 1.0) < 1e-14, "h weights antipalindromic");
    Mat7 gc = fs.f[3].transpose() * sig * fs.f[3];
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        check(std::abs(gc(i, j) - (i + j == 6 ? Cplx(-1) : Cplx(0))) < 1e-12,
              "ClockC Gram = -Q");
    auto sgram = [](int i, int j) {
      bool hit = (i < 6 && j < 6 && j == (i + 3) % 6) || (i == 6 && j == 6);
      return hit ? Cplx(-1) : Cplx(0);
    };
    Mat7 gs2 = s.transpose() * gb * s;
    Mat7 ge = fs.f[4].transpose() * sig * fs.f[4];
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        check(std::abs(gs2(i, j) - sgram(i, j)) < 1e-13, "ClockW-order Gram");
        check(std::abs(ge(i, j) - sgram(i, j)) < 1e-12, "GradedE0 Gram");
      }

    for (int i = 0; i < 5; ++i) {
      fs.finv[i] = fs.f[i].inverse();
      check((fs.f[i] * fs.finv[i] - Mat7::Identity()).cwiseAbs().maxCoeff() < 1e-12,
            "frame invertibility");
    }
    return fs;
  }();
  return fs;
}

int frame_index(Basis b) { return static_cast<int>(b); }

Mat7 to_std_conj(const Mat7& m, Basis tag) {
  if (tag == Basis::StandardM) return m;
  const auto& fs = frames_impl();
  return fs.f[frame_index(tag)] * m * fs.finv[frame_index(tag)];
}

}  // namespace

std::array<double, 7> h_weights(double r, double s) {
  return {1 / (r * s), 1 / r, 1 / s, 1, s, r, r * s};
}

OctQ to_oct(const Vec7Q& v) {
  OctQ x;
  for (int i = 0; i < 7; ++i) x.c[i + 1] = v[i];
  return x;
}

Vec7Q to_vec(const OctQ& x) {
  if (x.c[0] != 0) throw std::invalid_argument("to_vec: octonion has a real part");
  Vec7Q v;
  for (int i = 0; i < 7; ++i) v[i] = x.c[i + 1];
  return v;
}

Rat dot_im(const Vec7Q& a, const Vec7Q& b) {
  Rat acc = 0;
  for (int i = 0; i < 3; ++i) acc += a[i] * b[i];
  for (int i = 3; i < 7; ++i) acc -= a[i] * b[i];
  return acc;
}

Rat qform_im(const Vec7Q& a) { return dot_im(a, a); }

Vec7Q cross_im(const Vec7Q& a, const Vec7Q& b) {
  const auto& t = cross_table();
  Vec7Q r{};
  for (int i = 0; i < 7; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < 7; ++j) {
      if (i == j || b[j] == 0) continue;
      r[t.out[i][j]] += Rat(t.sgn[i][j]) * a[i] * b[j];
    }
  }
  return r;
}

Rat triple_im(const Vec7Q& a, const Vec7Q& b, const Vec7Q& c) {
  return dot_im(cross_im(a, b), c);
}

const Mat7& frame(Basis b) { return frames_impl().f[frame_index(b)]; }
const Mat7& frame_inv(Basis b) { return frames_impl().finv[frame_index(b)]; }

ImVector change_basis(const ImVector& v, Basis to) {
  if (v.tag == to) return v;
  return ImVector(frame_inv(to) * (frame(v.tag) * v.c), to);
}

Vec7 cross_std(const Vec7& a, const Vec7& b) {
  const auto& t = cross_table();
  Vec7 r = Vec7::Zero();
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      if (i == j) continue;
      r[t.out[i][j]] += double(t.sgn[i][j]) * a[i] * b[j];
    }
  return r;
}

Cplx dot_std(const Vec7& a, const Vec7& b) {
  Cplx acc = 0;
  for (int i = 0; i < 7; ++i) acc += kSig[i] * a[i] * b[i];
  return acc;
}

Vec7d cross_std(const Vec7d& a, const Vec7d& b) {
  const auto& t = cross_table();
  Vec7d r = Vec7d::Zero();
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      if (i == j) continue;
      r[t.out[i][j]] += double(t.sgn[i][j]) * a[i] * b[j];
    }
  return r;
}

double dot_std(const Vec7d& a, const Vec7d& b) {
  double acc = 0;
  for (int i = 0; i < 7; ++i) acc += kSig[i] * a[i] * b[i];
  return acc;
}

Cplx dot_im(const ImVector& a, const ImVector& b) {
  if (a.tag != b.tag) throw std::invalid_argument("dot_im: mixed bases");
  const Vec7 as = frame(a.tag) * a.c, bs = frame(b.tag) * b.c;
  return dot_std(as, bs);
}

Cplx qform_im(const ImVector& a) { return dot_im(a, a); }

ImVector cross_im(const ImVector& a, const ImVector& b) {
  if (a.tag != b.tag) throw std::invalid_argument("cross_im: mixed bases");
  const Vec7 as = frame(a.tag) * a.c, bs = frame(b.tag) * b.c;
  return ImVector(frame_inv(a.tag) * cross_std(as, bs), a.tag);
}

Cplx triple_im(const ImVector& a, const ImVector& b, const ImVector& c) {
  if (a.tag != b.tag || b.tag != c.tag) throw std::invalid_argument("triple_im: mixed bases");
  const Mat7& f = frame(a.tag);
  const Vec7 as = f * a.c, bs = f * b.c, cs = f * c.c;
  return dot_std(cross_std(as, bs), cs);
}

G2Certificate is_g2(const Mat7& m, Basis tag, double tol) {
  Mat7 ms = to_std_conj(m, tag);
  G2Certificate cert;
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) {
      const Vec7 ei = Vec7::Unit(i), ej = Vec7::Unit(j);
      const Vec7 ci = ms.col(i), cj = ms.col(j);
      Vec7 lhs = ms * cross_std(ei, ej);
      Vec7 rhs = cross_std(ci, cj);
      double d = (lhs - rhs).cwiseAbs().maxCoeff();
      cert.cross_defect = std::max(cert.cross_defect, d);
    }
  cert.det_dev = std::abs(ms.determinant() - Cplx(1));
  double scale = std::max(1.0, ms.cwiseAbs().maxCoeff());
  cert.pass = cert.cross_defect < tol * scale * scale && cert.det_dev < tol * scale * scale;
  return cert;
}

G2Matrix make_g2(const Mat7& m, Basis tag, double tol) {
  G2Matrix g;
  g.m = m;
  g.tag = tag;
  g.cert = is_g2(m, tag, tol);
  if (!g.cert.pass) {
    std::ostringstream os;
    os << "make_g2: certificate failed (cross defect " << g.cert.cross_defect
       << ", det dev " << g.cert.det_dev << ")";
    throw std::invalid_argument(os.str());
  }
  return g;
}

bool is_g2_exact(const Mat7Q& m) {
  const auto& t = cross_table();
  std::array<Vec7Q, 7> cols{};
  for (int c = 0; c < 7; ++c)
    for (int r = 0; r < 7; ++r) cols[c][r] = m[r][c];
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) {
      Vec7Q eij{};
      eij[t.out[i][j]] = Rat(t.sgn[i][j]);
      if (!is_zero(matvec(m, eij) - cross_im(cols[i], cols[j]))) return false;
    }
  return true;
}

MultBasis build_mult_basis(const Vec7d& x, const Vec7d& y, const Vec7d& z, double tol) {
  double nx = x.norm(), ny = y.norm(), nz = z.norm();
  double scale = std::max({1.0, nx * nx, ny * ny, nz * nz});
  auto near0 = [&](double v) { return std::abs(v) < tol * scale; };
  if (!near0(dot_std(x, x) - 1) || !near0(dot_std(y, y) - 1) || !near0(dot_std(z, z) + 1) ||
      !near0(dot_std(x, y)) || !near0(dot_std(x, z)) || !near0(dot_std(y, z)) ||
      !near0(dot_std(z, cross_std(x, y))))
    throw std::invalid_argument("build_mult_basis: triple violates the (+,+,-) conditions");
  MultBasis mb;
  Vec7d xy = cross_std(x, y);
  mb.vecs = {x, y, xy, z, cross_std(z, x), cross_std(z, y), cross_std(z, xy)};
  Mat7 m;
  for (int c = 0; c < 7; ++c) m.col(c) = mb.vecs[c].cast<Cplx>();
  mb.map = make_g2(m, Basis::StandardM, std::max(tol, 1e-9));
  return mb;
}

G2Matrix stiefel_to_g2(const std::array<Vec7d, 3>& src, const std::array<Vec7d, 3>& dst,
                       double tol) {
  MultBasis a = build_mult_basis(src[0], src[1], src[2], tol);
  MultBasis b = build_mult_basis(dst[0], dst[1], dst[2], tol);
  return make_g2(b.map.m * a.map.m.inverse(), Basis::StandardM, std::max(tol, 1e-9));
}

std::array<Vec7Q, 7> completion_tuple(const std::array<Vec7Q, 3>& t) {
  const auto& [u, v, w] = t;
  Vec7Q wu = cross_im(w, u);
  return {u, v, w, cross_im(u, v), cross_im(v, w), wu, cross_im(wu, v)};
}

std::array<Vec7d, 7> completion_tuple(const std::array<Vec7d, 3>& t) {
  const auto& [u, v, w] = t;
  Vec7d wu = cross_std(w, u);
  return {u, v, w, cross_std(u, v), cross_std(v, w), wu, cross_std(wu, v)};
}

namespace {

void require_null_triple(const std::array<Vec7d, 3>& t, double tol) {
  const auto& [u, v, w] = t;
  double scale = std::max({1.0, u.squaredNorm(), v.squaredNorm(), w.squaredNorm()});
  auto near0 = [&](double val) { return std::abs(val) < tol * scale; };
  if (!near0(dot_std(u, u)) || !near0(dot_std(v, v)) || !near0(dot_std(w, w)) ||
      !near0(dot_std(u, v)) || !near0(dot_std(u, w)) || !near0(dot_std(v, w)))
    throw std::invalid_argument("nulltriple_to_g2: triple is not null and isotropic");
  double trip = dot_std(u, cross_std(v, w));
  if (std::abs(trip - 1) > tol * scale * std::sqrt(scale))
    throw std::invalid_argument("nulltriple_to_g2: scalar triple product is not 1");
}

Mat7d completion_matrix(const std::array<Vec7d, 3>& t) {
  auto tup = completion_tuple(t);
  Mat7d m;
  for (int c = 0; c < 7; ++c) m.col(c) = tup[c];
  return m;
}

}  // namespace

G2Matrix nulltriple_to_g2(const std::array<Vec7d, 3>& src, const std::array<Vec7d, 3>& dst,
                          double tol) {
  require_null_triple(src, tol);
  require_null_triple(dst, tol);
  Mat7d cs = completion_matrix(src);
  Mat7d cd = completion_matrix(dst);
  Eigen::FullPivLU<Mat7d> lu(cs);
  if (!lu.isInvertible())
    throw std::invalid_argument("nulltriple_to_g2: degenerate completion tuple");
  Mat7d g = cd * lu.inverse();
  return make_g2(g.cast<Cplx>(), Basis::StandardM, std::max(tol * 10, 1e-8));
}

Mat7Q nulltriple_to_g2_exact(const std::array<Vec7Q, 3>& src, const std::array<Vec7Q, 3>& dst) {
  for (const auto& t : {src, dst}) {
    const auto& [u, v, w] = t;
    if (qform_im(u) != 0 || qform_im(v) != 0 || qform_im(w) != 0 || dot_im(u, v) != 0 ||
        dot_im(u, w) != 0 || dot_im(v, w) != 0 || triple_im(u, v, w) != 1)
      throw std::invalid_argument("nulltriple_to_g2_exact: invalid null triple");
  }
  Mat7Q cs = from_columns(completion_tuple(src));
  Mat7Q cd = from_columns(completion_tuple(dst));
  return matmul(cd, inverse(cs));
}

const std::array<Vec7Q, 7>& graded_basis() {
  static const std::array<Vec7Q, 7> gb = [] {
    std::array<Vec7Q, 7> g = {
        Vec7Q{0, 0, 1, 0, 0, 0, 1},                          // x_3
        Vec7Q{0, 2, 0, 0, 0, -2, 0},                         // x_2
        Vec7Q{rat(1, 2), 0, 0, 0, rat(-1, 2), 0, 0},         // x_1
        Vec7Q{0, 0, 0, 1, 0, 0, 0},                          // x_0
        Vec7Q{1, 0, 0, 0, 1, 0, 0},                          // x_{-1}
        Vec7Q{0, rat(1, 4), 0, 0, 0, rat(1, 4), 0},          // x_{-2}
        Vec7Q{0, 0, rat(1, 2), 0, 0, 0, rat(-1, 2)},         // x_{-3}
    };
    // defining relations: null, graded Gram, normalized triple
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        Rat wantv = (i + j == 6) ? (i == 3 ? Rat(-1) : Rat(1)) : Rat(0);
        if (dot_im(g[i], g[j]) != wantv)
          throw std::logic_error("graded basis Gram violated");
      }
    if (triple_im(g[0], g[4], g[5]) != 1)
      throw std::logic_error("graded basis triple normalization violated");
    return g;
  }();
  return gb;
}

const Mat7d& graded_frame() {
  static const Mat7d f = [] {
    Mat7d m;
    const auto& gb = graded_basis();
    for (int c = 0; c < 7; ++c)
      for (int r = 0; r < 7; ++r) m(r, c) = to_double(gb[c][r]);
    return m;
  }();
  return f;
}

const Mat7d& graded_frame_inv() {
  static const Mat7d fi = graded_frame().inverse();
  return fi;
}

}  // namespace g2toda
