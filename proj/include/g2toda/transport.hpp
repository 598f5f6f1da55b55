#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "g2toda/octonion.hpp"
#include "g2toda/toda.hpp"

namespace g2toda {

// Natural coordinates w with dw^6 = q dz^6 on overlapping sector charts, and
// renormalized parallel transport of the curve vector along paths to the
// boundary at infinity.

struct NaturalChart {
  int index = 1;            // chart label k, 1-based
  int degree = 0;           // deg q
  double center = 0.0;      // z-plane angle of the sector center
  double half_width = 0.0;  // 3*pi/(deg q + 6)
  Cd beta{1.0, 0.0};        // e^{-2 pi i (k-1)/6}
  double inner_radius = 1.0;
  double base_radius = 3.0;

  SexticPoly q;
  Cd base_point{0.0, 0.0};
  Cd base_branch{1.0, 0.0};  // sixth root of q at base_point
  Cd base_w{0.0, 0.0};

  // Natural coordinate, branch-continued from the base point along an arc
  // followed by a radial segment.  Requires |z| >= inner_radius and the
  // angle within half_width + 0.5 of the center.
  Cd map(Cd z) const;
  // The sixth root of q at z selected by the same continuation.
  Cd branch_at(Cd z) const;
  // Newton inverse of map, seeded by the leading monomial.
  Cd inverse(Cd w) const;
  // Asymptotic chart angle of the Euclidean ray of the given z-plane angle;
  // the sector center maps to pi/2, the sector edges to 0 and pi.
  double chart_angle(double z_angle) const;
  bool contains_angle(double z_angle) const;

 private:
  // shared walk for map/branch_at: returns (integral, final branch)
  std::pair<Cd, Cd> walk(Cd z) const;
};

std::vector<NaturalChart> charts(const SexticPoly& q);

struct Ray {
  double angle = 0.0;        // z-plane direction
  int chart = 1;             // chart in which the ray sits centrally
  double chart_angle = 0.0;  // asymptotic angle in that chart
  bool stable = false;       // margin to multiples of pi/6 at least pi/24
  bool marked = false;       // distinguished first ray
};

// One stable ray per boundary vertex, angles 2*pi*(k+1/4)/(deg q+6).
std::vector<Ray> vertex_rays(const SexticPoly& q);
// Distance of a chart angle to the nearest multiple of pi/6.
double stability_margin(double chart_angle);

struct PathSample {
  Cd z{0.0, 0.0};
  Cd v{0.0, 0.0};  // dz/dt
};
using TransportPath = std::function<PathSample(double)>;

// Straight ray t -> t e^{i angle} from the origin.
TransportPath ray_path(double angle);

// Pullback of the chart line t e^{i chart_theta} + i y0, reaching the open
// boundary edge between two vertices.  The path starts with a straight
// segment from the origin and is valid for t in [0, t_max].
TransportPath edge_ray(const NaturalChart& chart, double chart_theta,
                       double y0, double t_max);

// Descriptive entries for the unstable edge family of a chart.
std::vector<Ray> edge_rays(const SexticPoly& q, int chart_index,
                           const std::vector<double>& y0_list,
                           double chart_theta = M_PI / 3.0);

struct ConnectionMatrices {
  Mat7 a_z;     // D_H + phi      (ComplexB coordinates)
  Mat7 a_zbar;  // phi^{*h}
};

// Flat-connection coefficient matrices at z from the solved grid metric.
ConnectionMatrices connection(const TodaGrid& grid, Cd z);

struct TransportConfig {
  double t_end = 10.0;
  double tol = 1e-11;      // local relative error per step
  double cauchy_tol = 1e-6;
  std::array<double, 3> sample_fracs{0.9, 0.95, 1.0};
};

struct TransportResult {
  Vec7d limit = Vec7d::Zero();  // unit representative, StandardM
  double limit_qform = 0.0;     // q-form of the unit limit
  double cauchy = 0.0;          // max pairwise projective angle of samples
  bool converged = false;
  double log_scale = 0.0;       // accumulated renormalization exponent
  double q_drift = 0.0;         // isotropy drift while scale is resolvable
  double im_residual = 0.0;     // relative imaginary part at the last sample
};

// Renormalized transport of the curve vector along the path; limit read in
// the fiber over the path start via the metric there.
TransportResult transport_nu(const TodaGrid& grid, const TransportPath& path,
                             const TransportConfig& cfg);

// Renormalized frame at t_end (ComplexB); the dropped scale is returned
// through log_scale when non-null.
Mat7 transport_frame(const TodaGrid& grid, const TransportPath& path,
                     double t_end, double tol = 1e-11,
                     double* log_scale = nullptr);

std::string ray_report_json(const Ray& ray, const TransportResult& res);

}  // namespace g2toda
