#pragma once

#include <array>

#include "g2toda/octonion.hpp"

namespace g2toda {

// Matrix model of the Lie algebra g2 acting on the seven-dimensional
// representation in the ComplexB basis.  All matrices here are understood as
// endomorphisms in ComplexB coordinates; convert with change_basis if needed.

enum class Root {
  Beta,           // height 1 (short)
  Alpha,          // height 1 (long)
  AlphaBeta,      // height 2
  Alpha2Beta,     // height 3
  Alpha3Beta,     // height 4
  TwoAlpha3Beta,  // height 5, highest root
};

constexpr std::array<Root, 6> kPositiveRoots = {
    Root::Beta,       Root::Alpha,      Root::AlphaBeta,
    Root::Alpha2Beta, Root::Alpha3Beta, Root::TwoAlpha3Beta};

int root_height(Root r);

struct ChevalleyTriple {
  Mat7 e;      // root vector, upper-diagonal band at the root's height
  Mat7 e_neg;  // opposite root vector, conjugate transpose of e
  Mat7 t;      // co-root, [e, e_neg]
};

// Chevalley generators normalized so that [t,e] = 2e, [t,e_neg] = -2e_neg,
// [e,e_neg] = t.
const ChevalleyTriple& chevalley(Root r);

// Element of the Cartan subalgebra (diagonal matrices in ComplexB).
struct CsaElement {
  Cplx r{0.0, 0.0};
  Cplx s{0.0, 0.0};
  Mat7 matrix() const;  // diag(r+s, r, s, 0, -s, -r, -r-s)
};

struct Principal3DS {
  Mat7 x;   // diag(3,2,1,0,-1,-2,-3)
  Mat7 e;   // raising element, [x,e] = e
  Mat7 et;  // lowering element, [e,et] = x
};

const Principal3DS& principal_3ds();

// Cyclic Higgs field phi = et + qval*e_gamma together with its h-adjoint for
// the diagonal harmonic metric H = diag(1/(rs), 1/r, 1/s, 1, s, r, rs).
struct HiggsData {
  Cplx qval;
  double r = 1.0;
  double s = 1.0;
  Mat7 phi;
  Mat7 phi_adj;
};

HiggsData higgs(Cplx qval, double r, double s);  // throws on r,s <= 0

// Involutions of g2 (and of End(C^7)).  sigma is the Cartan involution fixed
// by the principal 3DS, rho the compact real structure, tau = rho . sigma the
// split real structure whose fixed set is g2'.
Mat7 sigma(const Mat7& a);
Mat7 rho(const Mat7& a);
Mat7 tau(const Mat7& a);

// Real structure on the representation: tau_V(x) = Q conj(x) in ComplexB
// coordinates.  Its fixed set is the standard copy of the imaginary split
// octonions.  Throws unless v is tagged ComplexB.
ImVector tau_V(const ImVector& v);

// Metric-twisted real structure H(r,s)^{-1} Q conj(x); an involution for any
// r,s > 0.  Compatible with tau_V: tau_V(A x) = tau(A) tau_V(x).
ImVector bundle_real_structure(const ImVector& v, double r, double s);

// max_{i<j} |A(ei x ej) - (A ei) x ej - ei x (A ej)| over the basis pairs of
// the tagged basis; zero exactly for derivations of the cross product.
double derivation_defect(const Mat7& a, Basis tag);

inline Mat7 commutator(const Mat7& a, const Mat7& b) { return a * b - b * a; }

}  // namespace g2toda
