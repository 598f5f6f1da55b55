#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace g2toda {

using Cd = std::complex<double>;

// Polynomial sextic differential q(z) dz^6, coefficients in ascending degree.
struct SexticPoly {
  std::vector<Cd> coeffs{Cd(0.0)};

  int degree() const;
  bool monic() const;
  bool centered() const;  // degree-(n-1) coefficient vanishes
  Cd eval(Cd z) const;
  Cd deriv(Cd z) const;        // q'(z)
  std::vector<Cd> roots() const;  // companion-matrix eigenvalues
  // radius of a disk guaranteed to contain {|q| <= 1}; 0 for nonvanishing
  // constants
  double unit_sublevel_radius() const;
};

struct TodaConstants {
  double c, d, b, alpha;
};

// c, d solve 5c^{5/6}d^{-1/2} = 2c^{-5/3} = 6d^{1/3}; b = 3d^{1/3},
// alpha = sqrt(2b).
TodaConstants constants();

// F = (F1, F2) with 2F1 = 5e^{u1-3u2} - 2e^{-2u1}|q|^2 and
// 2F2 = 6e^{2u2} - 5e^{u1-3u2}.  Exponent arguments are clamped at +-50;
// clamped reports whether the clamp was active.
std::pair<double, double> rhs(double u1, double u2, double absq2,
                              bool* clamped = nullptr);

// Piecewise sub-solution: max of the exact off-zeros solution
// v = ((5/6)log(c|q|), (1/6)log(d|q|)) and the hyperbolic pair
// w = ((5/2)log g_M, (1/2)log g_M) on |z| <= M, v outside.  M is derived
// from q (zeros of q are contained in B_{M/2}).
std::pair<double, double> sub_solution(const SexticPoly& q, Cd z);
double sub_solution_m(const SexticPoly& q);  // the M used above

// Super-solution ((5/12)log(c^2(|q|^2+A)), (1/12)log(d^2(|q|^2+2A))).
std::pair<double, double> super_solution(const SexticPoly& q, Cd z, double A);

// Doubling search for the smallest power-of-two A for which the
// super-solution inequalities f1, f2 >= 0 hold on all nodes of an R-disk
// grid and the envelopes are ordered.  Throws if the search exceeds 2^40.
double choose_A(const SexticPoly& q, double radius, int n_nodes = 257);

struct SolveConfig {
  double radius = 8.0;
  int n = 257;           // nodes per side, odd keeps a center node
  double tol = 1e-8;     // interior sup-norm residual target
  int max_outer = 400;
  int refresh_every = 12;  // shift/preconditioner refresh cadence
  bool verbose = false;
};

// Converged grid solution of the Toda system on the disk.  Arrays are
// row-major n x n; nodes outside the disk carry the Dirichlet extension u^-.
struct TodaGrid {
  double radius = 0.0;
  int n = 0;
  SexticPoly q;
  std::vector<double> u1, u2;
  std::vector<double> sub1, sub2, sup1, sup2;
  double residual = 0.0;
  double min_envelope_slack = 0.0;  // min over iterates and nodes
  int outer_iterations = 0;
  double a_const = 0.0;  // the A used for the super-solution

  double h() const { return 2.0 * radius / (n - 1); }
  Cd z_at(int i, int j) const {
    return {-radius + j * h(), -radius + i * h()};
  }
  bool inside(int i, int j) const { return std::abs(z_at(i, j)) < radius; }

  // bicubic interpolation (4x4 Lagrange stencil); z strictly inside
  double sample_u1(Cd z) const;
  double sample_u2(Cd z) const;
  // metric components r = e^{u1-u2}, s = e^{2u2}
  double sample_r(Cd z) const;
  double sample_s(Cd z) const;
  // z-derivatives of log r and log s via fourth-order differences of the
  // interpolant
  Cd sample_dlogr(Cd z) const;
  Cd sample_dlogs(Cd z) const;
};

TodaGrid solve(const SexticPoly& q, const SolveConfig& cfg);

// q-flat distance from z to the zero set of q, computed as the minimum over
// roots of the straight-line length in the singular flat metric |q|^{1/3}|dz|^2.
double t_distance(const SexticPoly& q, Cd z);

// Deviation from the off-zeros exact solution in the decoupling coordinates
// x1 = w1 + w2, x2 = w1 - 3 w2 where w = u - v.  Nodes with t_distance < 1
// or outside the disk are masked.
struct ErrorField {
  double radius = 0.0;
  int n = 0;
  std::vector<double> x1, x2;
  std::vector<unsigned char> mask;  // 1 = usable
  double sample(const std::vector<double>& f, Cd z) const;
};

ErrorField error_fields(const TodaGrid& grid, const SexticPoly& q);

struct DecayFit {
  double rate_x1 = 0.0;
  double rate_x2 = 0.0;
  int n_x1 = 0;  // samples used
  int n_x2 = 0;
};

// Least-squares slope of log(x_i sqrt(t)) against t along the ray of the
// given angle; windows t in [1.5, 4.0] for x1 and [0.8, 2.4] for x2.
// Throws if fewer than 6 usable samples remain in a window.
DecayFit decay_fit(const ErrorField& ef, double ray_angle, const SexticPoly& q);

// Solution-file round trip: {radius, n_nodes, q_coeffs, u1, u2, residual}.
void save_solution(const TodaGrid& grid, const std::string& path);
TodaGrid load_solution(const std::string& path);

}  // namespace g2toda
