#pragma once

#include <array>
#include <tuple>

#include "g2toda/octonion.hpp"

namespace g2toda {

// Closed-form data attached to the constant differential q == 1: the flat
// metric constants, the eigendecomposition of the cyclic Higgs field, the
// explicit frame field psi0, the model curve nu0, and its projective limits.

struct ModelData {
  double r0 = 0.0, s0 = 0.0, alpha = 0.0;
  Vec7d h0 = Vec7d::Zero();  // metric diagonal, ComplexB order u_3..u_{-3}
  Vec7 eigs = Vec7::Zero();  // Higgs eigenvalues alpha xi^{2k-1} (k = 1..6), then 0
  Mat7 s = Mat7::Zero();     // eigenvector matrix, columns (w_1, w_3, ..., w_11, w_0)
  Mat7 e0 = Mat7::Zero();    // E0 = H0^{-1/2} S, ComplexB coordinates
  Mat7 e0_inv = Mat7::Zero();
};

// built once; the eigen-relations against the g2lie Higgs field are checked
// at startup and failure throws std::logic_error
const ModelData& model_data();

// (r0, s0, metric diagonal h(r0, s0))
std::tuple<double, double, Vec7d> model_metric();

// growth exponents d_i(theta) = cos(theta + (2i-1) pi/6) for i = 1..6, d_7 = 0,
// ordered like the columns of S
std::array<double, 7> script_d(double theta);

// frame field psi0(z) = E0 exp(2 Re(z D)) E0^{-1} in ComplexB coordinates
Mat7 psi0(Cplx z);

// model curve in GradedE0 coordinates: (1/sqrt6) sum_k (-1)^k e^{c_k(z)} x_{2k-1}
// with c_k(z) = 2 alpha Re(z xi^{2k-1})
ImVector nu0(Cplx z);

enum class PathKind { Sector, Edge };

// Projective limit of [nu0] along gamma(t) = t e^{i theta} + i y0.  Sector
// paths need theta strictly between multiples of pi/3 and ignore y0; Edge
// paths need theta on a multiple of pi/3.  Throws std::invalid_argument
// otherwise.  Coordinates are GradedE0.
ImVector model_limit(PathKind kind, double theta, double y0 = 0.0);

// the hexagon vertices [x_1], [x_3], ..., [x_11] in GradedE0 coordinates
std::array<ImVector, 6> model_hexagon();

// A vector fixed by the metric real structure has real GradedE0 coordinates,
// and is the real split octonion with those coordinates in the ClockW frame.
// Returns StandardM coordinates; throws if the coordinates are not real.
Vec7d graded_real_point(const ImVector& v, double tol = 1e-9);

// angle in [0, pi/2] between the lines spanned by a and b
double projective_angle(const Vec7d& a, const Vec7d& b);

}  // namespace g2toda
