#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "g2toda/g2lie.hpp"

using namespace g2toda;

namespace {

double mdev(const Mat7& a, const Mat7& b) { return (a - b).cwiseAbs().maxCoeff(); }

Mat7 random_mat(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat7 m;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) m(i, j) = Cplx(u(rng), u(rng));
  return m;
}

Mat7 diagm(std::initializer_list<double> vals) {
  Mat7 m = Mat7::Zero();
  int i = 0;
  for (double v : vals) m(i, i) = v, ++i;
  return m;
}

const Cplx s2i(0.0, std::sqrt(2.0));
const Cplx s6i(0.0, std::sqrt(6.0));

}  // namespace

TEST_CASE("chevalley root vectors match the fixed matrices") {
  // e_delta lives on the upper diagonal at the root's height
  const auto& eb = chevalley(Root::Beta).e;
  Mat7 want = Mat7::Zero();
  want(0, 1) = 1.0;
  want(2, 3) = s2i;
  want(3, 4) = s2i;
  want(5, 6) = 1.0;
  CHECK(mdev(eb, want) == 0.0);

  const auto& ea = chevalley(Root::Alpha).e;
  want = Mat7::Zero();
  want(1, 2) = 1.0;
  want(4, 5) = 1.0;
  CHECK(mdev(ea, want) == 0.0);

  const auto& eab = chevalley(Root::AlphaBeta).e;
  want = Mat7::Zero();
  want(0, 2) = 1.0;
  want(1, 3) = -s2i;
  want(3, 5) = s2i;
  want(4, 6) = -1.0;
  CHECK(mdev(eab, want) == 0.0);

  const auto& ea2b = chevalley(Root::Alpha2Beta).e;
  want = Mat7::Zero();
  want(0, 3) = s2i;
  want(1, 4) = 1.0;
  want(2, 5) = 1.0;
  want(3, 6) = s2i;
  CHECK(mdev(ea2b, want) == 0.0);

  const auto& ea3b = chevalley(Root::Alpha3Beta).e;
  want = Mat7::Zero();
  want(0, 4) = 1.0;
  want(2, 6) = -1.0;
  CHECK(mdev(ea3b, want) == 0.0);

  const auto& eg = chevalley(Root::TwoAlpha3Beta).e;
  want = Mat7::Zero();
  want(0, 5) = 1.0;
  want(1, 6) = 1.0;
  CHECK(mdev(eg, want) == 0.0);

  for (Root r : kPositiveRoots)
    CHECK(mdev(chevalley(r).e_neg, chevalley(r).e.adjoint()) == 0.0);
}

TEST_CASE("co-roots") {
  CHECK(mdev(chevalley(Root::Beta).t, diagm({1, -1, 2, 0, -2, 1, -1})) < 1e-15);
  CHECK(mdev(chevalley(Root::Alpha).t, diagm({0, 1, -1, 0, 1, -1, 0})) < 1e-15);
  CHECK(mdev(chevalley(Root::AlphaBeta).t, diagm({1, 2, -1, 0, 1, -2, -1})) < 1e-15);
  CHECK(mdev(chevalley(Root::Alpha2Beta).t, diagm({2, 1, 1, 0, -1, -1, -2})) < 1e-15);
  CHECK(mdev(chevalley(Root::Alpha3Beta).t, diagm({1, 0, 1, 0, -1, 0, -1})) < 1e-15);
  CHECK(mdev(chevalley(Root::TwoAlpha3Beta).t, diagm({1, 1, 0, 0, 0, -1, -1})) < 1e-15);
}

TEST_CASE("chevalley normalizations and g2 membership") {
  for (Root r : kPositiveRoots) {
    const auto& tr = chevalley(r);
    CHECK(mdev(commutator(tr.t, tr.e), 2.0 * tr.e) < 1e-10);
    CHECK(mdev(commutator(tr.t, tr.e_neg), -2.0 * tr.e_neg) < 1e-10);
    CHECK(mdev(commutator(tr.e, tr.e_neg), tr.t) < 1e-10);
    // root vectors are derivations of the cross product
    CHECK(derivation_defect(tr.e, Basis::ComplexB) < 1e-10);
    CHECK(derivation_defect(tr.e_neg, Basis::ComplexB) < 1e-10);
    CHECK(derivation_defect(tr.t, Basis::ComplexB) < 1e-10);
  }
}

TEST_CASE("principal 3DS") {
  const auto& p = principal_3ds();
  CHECK(mdev(p.x, diagm({3, 2, 1, 0, -1, -2, -3})) == 0.0);
  Mat7 e_want = Mat7::Zero();
  const Cplx sup[6] = {std::sqrt(3.0), std::sqrt(5.0), s6i, s6i, std::sqrt(5.0),
                       std::sqrt(3.0)};
  for (int i = 0; i < 6; ++i) e_want(i, i + 1) = sup[i];
  CHECK(mdev(p.e, e_want) == 0.0);
  Mat7 et_want = Mat7::Zero();
  const Cplx sub[6] = {std::sqrt(3.0), std::sqrt(5.0), -s6i, -s6i, std::sqrt(5.0),
                       std::sqrt(3.0)};
  for (int i = 0; i < 6; ++i) et_want(i + 1, i) = sub[i];
  CHECK(mdev(p.et, et_want) == 0.0);

  CHECK(mdev(commutator(p.x, p.e), p.e) < 1e-12);
  CHECK(mdev(commutator(p.x, p.et), -p.et) < 1e-12);
  CHECK(mdev(commutator(p.e, p.et), p.x) < 1e-12);
  // x = 3 t_beta + 5 t_alpha
  CHECK(mdev(p.x, 3.0 * chevalley(Root::Beta).t + 5.0 * chevalley(Root::Alpha).t) <
        1e-12);
  CHECK(derivation_defect(p.x, Basis::ComplexB) < 1e-12);
  CHECK(derivation_defect(p.e, Basis::ComplexB) < 1e-12);
  CHECK(derivation_defect(p.et, Basis::ComplexB) < 1e-12);

  // grading [x, e_delta] = height(delta) e_delta
  for (Root r : kPositiveRoots) {
    const auto& tr = chevalley(r);
    double k = root_height(r);
    CHECK(mdev(commutator(p.x, tr.e), k * tr.e) < 1e-12);
    CHECK(mdev(commutator(p.x, tr.e_neg), -k * tr.e_neg) < 1e-12);
  }
}

TEST_CASE("CSA elements") {
  CsaElement h{Cplx(0.7, -0.3), Cplx(-1.2, 0.4)};
  Mat7 m = h.matrix();
  CHECK(m(0, 0) == h.r + h.s);
  CHECK(m(3, 3) == Cplx(0.0));
  CHECK(m(6, 6) == -h.r - h.s);
  // infinitesimal stabilizer of the triple product
  CHECK(derivation_defect(m, Basis::ComplexB) < 1e-12);
  // co-roots are CSA elements
  CHECK(mdev(chevalley(Root::Alpha).t, CsaElement{Cplx(1), Cplx(-1)}.matrix()) < 1e-15);
  CHECK(mdev(chevalley(Root::Beta).t, CsaElement{Cplx(-1), Cplx(2)}.matrix()) < 1e-15);
}

TEST_CASE("involutions sigma, rho, tau") {
  std::mt19937 rng(11);
  for (int it = 0; it < 10; ++it) {
    Mat7 a = random_mat(rng), b = random_mat(rng);
    CHECK(mdev(sigma(sigma(a)), a) < 1e-13);
    CHECK(mdev(rho(rho(a)), a) < 1e-13);
    CHECK(mdev(tau(tau(a)), a) < 1e-13);
    CHECK(mdev(rho(sigma(a)), sigma(rho(a))) < 1e-13);
    // anti-automorphism of the bracket: s[a,b] = [sa, sb]
    CHECK(mdev(sigma(commutator(a, b)), commutator(sigma(a), sigma(b))) < 1e-12);
  }

  // sigma acts by parity of the height on root vectors, identity on the CSA
  for (Root r : kPositiveRoots) {
    const auto& tr = chevalley(r);
    double sign = root_height(r) % 2 == 0 ? 1.0 : -1.0;
    CHECK(mdev(sigma(tr.e), sign * tr.e) < 1e-14);
    CHECK(mdev(sigma(tr.e_neg), sign * tr.e_neg) < 1e-14);
    CHECK(mdev(sigma(tr.t), tr.t) < 1e-14);
  }

  const auto& p = principal_3ds();
  CHECK(mdev(sigma(p.x), p.x) < 1e-14);
  CHECK(mdev(sigma(p.et), -p.et) < 1e-14);
  // regression: the split structure negates the grading element
  CHECK(mdev(tau(p.x), -p.x) < 1e-14);
  // tau-fixed matrices close under bracket (split real form)
  std::mt19937 rng2(12);
  Mat7 a = random_mat(rng2), b = random_mat(rng2);
  Mat7 fa = a + tau(a), fb = b + tau(b);
  CHECK(mdev(tau(fa), fa) < 1e-13);
  CHECK(mdev(tau(commutator(fa, fb)), commutator(fa, fb)) < 1e-12);
}

TEST_CASE("tau_V real structure") {
  ImVector u0{Vec7::Unit(3), Basis::ComplexB};
  CHECK((tau_V(u0).c - u0.c).norm() == 0.0);
  for (int k = 0; k < 3; ++k) {
    Vec7 re = Vec7::Unit(k) + Vec7::Unit(6 - k);
    Vec7 im = Cplx(0, 1) * (Vec7::Unit(k) - Vec7::Unit(6 - k));
    CHECK((tau_V({re, Basis::ComplexB}).c - re).norm() < 1e-15);
    CHECK((tau_V({im, Basis::ComplexB}).c - im).norm() < 1e-15);
  }
  CHECK_THROWS_AS(tau_V(ImVector{Vec7::Unit(0), Basis::StandardM}),
                  std::invalid_argument);

  // fixed vectors are exactly the real points of StandardM
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int it = 0; it < 20; ++it) {
    Vec7 std_re;
    for (int i = 0; i < 7; ++i) std_re[i] = u(rng);
    ImVector vb = change_basis({std_re, Basis::StandardM}, Basis::ComplexB);
    CHECK((tau_V(vb).c - vb.c).norm() < 1e-13);
  }
}

TEST_CASE("bundle real structure") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.3, 2.5), um(-1.0, 1.0);
  for (int it = 0; it < 20; ++it) {
    double r = u(rng), s = u(rng);
    Vec7 x;
    for (int i = 0; i < 7; ++i) x[i] = Cplx(um(rng), um(rng));
    ImVector v{x, Basis::ComplexB};
    // involution
    CHECK((bundle_real_structure(bundle_real_structure(v, r, s), r, s).c - v.c)
              .norm() < 1e-13);
    // multiplicative compatibility with tau on endomorphisms
    Mat7 a = random_mat(rng);
    ImVector lhs = tau_V(ImVector{a * v.c, Basis::ComplexB});
    Vec7 rhs = tau(a) * tau_V(v).c;
    CHECK((lhs.c - rhs).norm() < 1e-12);
  }
  // at r = s = 1 it reduces to tau_V, which fixes u_0
  ImVector u0{Vec7::Unit(3), Basis::ComplexB};
  CHECK((bundle_real_structure(u0, 1.0, 1.0).c - u0.c).norm() == 0.0);

  // fixes the h-unitary multiplication frame at the matching r, s
  const double d = 5.0 / (6.0 * std::sqrt(3.0));
  const double r0 = std::cbrt(0.4), s0 = std::cbrt(d);
  for (int k = 0; k < 7; ++k) {
    ImVector ck = change_basis({Vec7::Unit(k), Basis::ClockC}, Basis::ComplexB);
    CHECK((bundle_real_structure(ck, r0, s0).c - ck.c).norm() < 1e-13);
  }
  CHECK_THROWS_AS(bundle_real_structure(u0, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("higgs field and h-adjoint") {
  const auto& p = principal_3ds();
  CHECK(mdev(higgs(Cplx(0.0), 1.0, 1.0).phi, p.et) == 0.0);

  Cplx q(0.8, -0.45);
  double r = 1.3, s = 0.6;
  HiggsData h = higgs(q, r, s);
  CHECK(h.phi(0, 5) == q);
  CHECK(h.phi(1, 6) == q);

  Mat7 want = Mat7::Zero();
  want(0, 1) = std::sqrt(3.0) * s;
  want(1, 2) = std::sqrt(5.0) * r / s;
  want(2, 3) = s6i * s;
  want(3, 4) = s6i * s;
  want(4, 5) = std::sqrt(5.0) * r / s;
  want(5, 6) = std::sqrt(3.0) * s;
  want(5, 0) = std::conj(q) / (r * r * s);
  want(6, 1) = std::conj(q) / (r * r * s);
  CHECK(mdev(h.phi_adj, want) < 1e-14);

  // the commutator is diagonal (right side of the metric equations)
  Mat7 c = commutator(h.phi, h.phi_adj);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      if (i != j) CHECK(std::abs(c(i, j)) < 1e-13);
  // trace-free with the expected log-derivative entries (second and third
  // diagonal components carry the metric equations for r and s)
  CHECK(std::abs(c.trace()) < 1e-12);
  Cplx qq = q * std::conj(q);
  CHECK(std::abs(c(1, 1) + (5.0 * r / s - 3.0 * s - qq / (r * r * s))) < 1e-12);
  CHECK(std::abs(c(2, 2) + (6.0 * s - 5.0 * r / s)) < 1e-12);

  CHECK_THROWS_AS(higgs(q, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(higgs(q, 1.0, -2.0), std::invalid_argument);
}
