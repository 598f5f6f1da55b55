#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "g2toda/toda.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <vector>

using namespace g2toda;

namespace {

const SexticPoly kQOne{{Cd(1.0)}};
const SexticPoly kQZ{{Cd(0.0), Cd(1.0)}};

double laplacian_quarter(const SexticPoly& q, Cd z, double fd) {
  auto f = [&](Cd w) { return sub_solution(q, w).first; };
  double s = f(z + fd) + f(z - fd) + f(z + Cd(0, fd)) + f(z - Cd(0, fd)) -
             4.0 * f(z);
  return 0.25 * s / (fd * fd);
}

}  // namespace

TEST_CASE("constants") {
  auto k = constants();
  CHECK(k.c == doctest::Approx(0.598791493185112564).epsilon(1e-15));
  CHECK(k.d == doctest::Approx(0.481125224324688137).epsilon(1e-15));
  CHECK(k.b == doctest::Approx(2.35075461245119753).epsilon(1e-15));
  CHECK(k.alpha == doctest::Approx(2.1682963876975848).epsilon(1e-15));

  // the three balance equations share the common value 2b
  double e1 = 5.0 * std::pow(k.c, 5.0 / 6.0) / std::sqrt(k.d);
  double e2 = 2.0 * std::pow(k.c, -5.0 / 3.0);
  double e3 = 6.0 * std::cbrt(k.d);
  CHECK(e1 == doctest::Approx(2.0 * k.b).epsilon(1e-14));
  CHECK(e2 == doctest::Approx(2.0 * k.b).epsilon(1e-14));
  CHECK(e3 == doctest::Approx(2.0 * k.b).epsilon(1e-14));
  CHECK(k.alpha ==
        doctest::Approx(std::pow(2.0, 1.0 / 3.0) * std::pow(3.0, 0.25) *
                        std::pow(5.0, 1.0 / 6.0))
            .epsilon(1e-14));
}

TEST_CASE("polynomial basics") {
  SexticPoly p{{Cd(0, 2), Cd(-3), Cd(0), Cd(1)}};  // z^3 - 3z + 2i
  CHECK(p.degree() == 3);
  CHECK(p.monic());
  CHECK(p.centered());
  CHECK(p.eval(Cd(2, 0)) == Cd(2, 2));
  CHECK(p.deriv(Cd(2, 0)) == Cd(9, 0));

  SexticPoly padded{{Cd(1), Cd(0), Cd(0)}};
  CHECK(padded.degree() == 0);
  CHECK(kQZ.degree() == 1);
  CHECK(kQZ.unit_sublevel_radius() == doctest::Approx(1.0));

  // (z-1)(z+2)(z-3i) expanded
  SexticPoly cubic{{Cd(0, 6), Cd(-2, -3), Cd(1, -3), Cd(1)}};
  auto rts = cubic.roots();
  REQUIRE(rts.size() == 3);
  double best = 1e30;
  for (Cd r : rts) best = std::min(best, std::abs(r - Cd(0, 3)));
  CHECK(best < 1e-10);
  for (Cd r : rts) CHECK(std::abs(cubic.eval(r)) < 1e-9);
}

TEST_CASE("rhs values and clamping") {
  auto f0 = rhs(0.0, 0.0, 0.0);
  CHECK(f0.first == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(f0.second == doctest::Approx(0.5).epsilon(1e-15));

  // the off-zeros closed form annihilates the right-hand side
  auto k = constants();
  for (double aq : {0.3, 1.0, 2.5, 17.0}) {
    double v1 = (5.0 / 6.0) * std::log(k.c * aq);
    double v2 = (1.0 / 6.0) * std::log(k.d * aq);
    auto f = rhs(v1, v2, aq * aq);
    CHECK(std::abs(f.first) < 1e-13 * (1.0 + aq * aq));
    CHECK(std::abs(f.second) < 1e-13 * (1.0 + aq * aq));
  }

  bool clamped = false;
  rhs(100.0, 0.0, 1.0, &clamped);
  CHECK(clamped);
  clamped = false;
  rhs(0.1, -0.2, 1.0, &clamped);
  CHECK(!clamped);
}

TEST_CASE("sub-solution") {
  auto k = constants();

  SUBCASE("constant differential reduces to the exact solution") {
    for (Cd z : {Cd(0, 0), Cd(1, 2), Cd(-4, 0.5)}) {
      auto lo = sub_solution(kQOne, z);
      CHECK(lo.first == doctest::Approx((5.0 / 6.0) * std::log(k.c)));
      CHECK(lo.second == doctest::Approx((1.0 / 6.0) * std::log(k.d)));
    }
    CHECK(sub_solution(kQOne, Cd(0, 0)).first ==
          doctest::Approx(-0.4273681).epsilon(1e-6));
    CHECK(sub_solution(kQOne, Cd(0, 0)).second ==
          doctest::Approx(-0.1219380).epsilon(1e-6));
  }

  SUBCASE("hyperbolic branch near the zero") {
    double m = sub_solution_m(kQZ);
    CHECK(m == doctest::Approx(2.0));
    double g0 = 8.0 * m * m / std::pow(4.0 * m * m, 2);  // = 1/(2 m^2)
    auto at0 = sub_solution(kQZ, Cd(0, 0));
    CHECK(at0.first == doctest::Approx(2.5 * std::log(g0)).epsilon(1e-12));
    CHECK(at0.second == doctest::Approx(0.5 * std::log(g0)).epsilon(1e-12));
  }

  SUBCASE("continuity across the matching circle") {
    double m = sub_solution_m(kQZ);
    for (int k2 = 0; k2 < 12; ++k2) {
      Cd zi = std::polar(m - 1e-9, 0.5236 * k2);
      Cd zo = std::polar(m + 1e-9, 0.5236 * k2);
      auto a = sub_solution(kQZ, zi);
      auto b = sub_solution(kQZ, zo);
      CHECK(std::abs(a.first - b.first) < 1e-8);
      CHECK(std::abs(a.second - b.second) < 1e-8);
    }
  }

  SUBCASE("hyperbolic density satisfies its defining equation") {
    // on the branch where the max picks the hyperbolic pair,
    // (1/4) Laplacian of u1 equals (5/2) g
    for (Cd z : {Cd(1e-3, 0), Cd(0, 2e-3), Cd(1e-3, 1e-3)}) {
      double m = sub_solution_m(kQZ);
      double g = 8.0 * m * m / std::pow(4.0 * m * m - std::norm(z), 2);
      double lap = laplacian_quarter(kQZ, z, 2e-4);
      CHECK(lap == doctest::Approx(2.5 * g).epsilon(1e-5));
    }
  }
}

TEST_CASE("super-solution and A search") {
  auto k = constants();

  SUBCASE("closed form") {
    auto hi = super_solution(kQZ, Cd(2, 1), 4.0);
    double x = 5.0;  // |q|^2 at 2+i
    CHECK(hi.first ==
          doctest::Approx((5.0 / 12.0) * std::log(k.c * k.c * (x + 4.0))));
    CHECK(hi.second ==
          doctest::Approx((1.0 / 12.0) * std::log(k.d * k.d * (x + 8.0))));
  }

  SUBCASE("doubling search and margin certificates") {
    double a1 = choose_A(kQOne, 6.0, 129);
    CHECK(a1 == 1.0);

    double az = choose_A(kQZ, 8.0, 257);
    CHECK(az >= 1.0);

    // margins stay nonnegative on a 10x refined ring at the grid edge
    double b = k.b;
    for (int i = 0; i < 2570; ++i) {
      double theta = 2.0 * 3.14159265358979 * i / 2570.0;
      for (double rho : {7.9, 7.95, 8.0}) {
        Cd z = std::polar(rho, theta);
        double x = std::norm(kQZ.eval(z));
        double y = std::norm(kQZ.deriv(z));
        double f1 = b * std::pow(x + az, 29.0 / 12.0) *
                        std::pow(x + 2 * az, -0.25) -
                    b * std::pow(x + az, 7.0 / 6.0) * x - (5.0 / 12.0) * az * y;
        double f2 = -b * std::pow(x + az, 5.0 / 12.0) *
                        std::pow(x + 2 * az, 7.0 / 4.0) +
                    b * std::pow(x + 2 * az, 13.0 / 6.0) - (1.0 / 6.0) * az * y;
        CHECK(f1 >= 0.0);
        CHECK(f2 >= 0.0);
      }
    }

    // envelopes stay ordered on a fine disk sample
    for (int i = -40; i <= 40; ++i)
      for (int j = -40; j <= 40; ++j) {
        Cd z(0.2 * j, 0.2 * i);
        if (std::abs(z) >= 8.0) continue;
        auto lo = sub_solution(kQZ, z);
        auto hi = super_solution(kQZ, z, az);
        CHECK(hi.first >= lo.first);
        CHECK(hi.second >= lo.second);
      }
  }
}

TEST_CASE("flat distance to the zero set") {
  // for q = z the metric is radial: t = (6/7) rho^{7/6}
  for (double rho : {0.5, 1.0, 2.0, 3.7}) {
    double want = (6.0 / 7.0) * std::pow(rho, 7.0 / 6.0);
    CHECK(t_distance(kQZ, std::polar(rho, 0.7)) ==
          doctest::Approx(want).epsilon(1e-6));
  }
  CHECK(t_distance(kQZ, Cd(0, 0)) == 0.0);
  CHECK(t_distance(kQOne, Cd(5, 5)) > 1e20);

  // shifted zero
  SexticPoly shifted{{Cd(-1.5, 0), Cd(1)}};  // z - 3/2
  double want = (6.0 / 7.0) * std::pow(2.0, 7.0 / 6.0);
  CHECK(t_distance(shifted, Cd(3.5, 0)) == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("constant differential solve is exact") {
  SolveConfig cfg;
  cfg.radius = 6.0;
  cfg.n = 65;
  TodaGrid g = solve(kQOne, cfg);
  auto k = constants();
  double v1 = (5.0 / 6.0) * std::log(k.c);
  double v2 = (1.0 / 6.0) * std::log(k.d);
  double dev = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      int p = i * g.n + j;
      dev = std::max(dev, std::abs(g.u1[p] - v1));
      dev = std::max(dev, std::abs(g.u2[p] - v2));
    }
  CHECK(dev < 1e-7);
  CHECK(g.residual < 1e-8);
  CHECK(g.min_envelope_slack > -1e-9);

  SUBCASE("solution file round trip") {
    save_solution(g, "toda_roundtrip.json");
    TodaGrid back = load_solution("toda_roundtrip.json");
    CHECK(back.n == g.n);
    CHECK(back.radius == g.radius);
    CHECK(back.residual == g.residual);
    REQUIRE(back.u1.size() == g.u1.size());
    bool same = true;
    for (size_t p = 0; p < g.u1.size(); ++p)
      same = same && back.u1[p] == g.u1[p] && back.u2[p] == g.u2[p];
    CHECK(same);
    CHECK(back.q.coeffs == g.q.coeffs);
    std::remove("toda_roundtrip.json");
  }
}

TEST_CASE("linear differential solve") {
  SolveConfig cfg;
  cfg.radius = 8.0;
  cfg.n = 385;
  cfg.verbose = false;
  TodaGrid g = solve(kQZ, cfg);
  CHECK(g.residual < 1e-8);
  CHECK(g.min_envelope_slack > -1e-9);

  SUBCASE("radial reference profile") {
    // radial two-point boundary values computed independently at 1e-10
    struct Ref {
      double rho, u1, u2;
    };
    const Ref refs[] = {
        {0.0, -1.164320951536, -0.243598829745},
        {0.5, -0.857208708423, -0.197263688262},
        {1.0, -0.414546555127, -0.117895505064},
        {2.0, 0.150338583073, -0.006385438683},
        {3.0, 0.488142475147, 0.061164240827},
        {4.0, 0.727877108528, 0.109111110579},
        {5.0, 0.913830066222, 0.146301701886},
        {6.0, 1.065764696877, 0.176688628017},
    };
    double dev = 0.0;
    for (const Ref& r : refs) {
      for (double theta : {0.0, 1.1, 2.7, 4.4}) {
        Cd z = std::polar(r.rho, theta);
        dev = std::max(dev, std::abs(g.sample_u1(z) - r.u1));
        dev = std::max(dev, std::abs(g.sample_u2(z) - r.u2));
      }
    }
    std::printf("radial profile max deviation %.3e\n", dev);
    CHECK(dev < 2e-5);
    CHECK(g.sample_r(Cd(0, 0)) == doctest::Approx(0.398231365682).epsilon(3e-5));
    CHECK(g.sample_s(Cd(0, 0)) == doctest::Approx(0.614345589707).epsilon(3e-5));
  }

  SUBCASE("derivative sampling consistency") {
    for (Cd z : {Cd(1.3, 0.4), Cd(-2.1, 1.7), Cd(0.4, -2.6)}) {
      double fd = 1e-4;
      double ux = (g.sample_u2(z + fd) - g.sample_u2(z - fd)) / (2 * fd);
      double uy =
          (g.sample_u2(z + Cd(0, fd)) - g.sample_u2(z - Cd(0, fd))) / (2 * fd);
      Cd want = Cd(ux, -uy);  // d/dz of log s = 2 u2
      Cd got = g.sample_dlogs(z);
      CHECK(std::abs(got - want) < 2e-4);
    }
  }

  SUBCASE("growth of the metric coefficients") {
    // log r ~ (2n/3) log|z|, log s ~ (n/3) log|z| on the outer annulus
    double sx = 0, sy1 = 0, sy2 = 0, sxx = 0, sxy1 = 0, sxy2 = 0;
    int m = 0;
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        int p = i * g.n + j;
        double rho = std::abs(g.z_at(i, j));
        if (rho < 4.8 || rho > 6.8) continue;
        double lx = std::log(rho);
        double y1 = g.u1[p] - g.u2[p];
        double y2 = 2.0 * g.u2[p];
        sx += lx;
        sy1 += y1;
        sy2 += y2;
        sxx += lx * lx;
        sxy1 += lx * y1;
        sxy2 += lx * y2;
        ++m;
      }
    double slope_r = (m * sxy1 - sx * sy1) / (m * sxx - sx * sx);
    double slope_s = (m * sxy2 - sx * sy2) / (m * sxx - sx * sx);
    std::printf("growth slopes %.6f %.6f\n", slope_r, slope_s);
    CHECK(std::abs(slope_r - 2.0 / 3.0) < 0.05 * (2.0 / 3.0));
    CHECK(std::abs(slope_s - 1.0 / 3.0) < 0.05 * (1.0 / 3.0));
  }

  SUBCASE("error fields and decay rates") {
    ErrorField ef = error_fields(g, kQZ);

    // mask opens once the flat distance reaches one
    int nmid = (g.n - 1) / 2;
    auto node_mask = [&](double x) {
      int j = nmid + int(std::lround(x / g.h()));
      return int(ef.mask[nmid * g.n + j]);
    };
    CHECK(node_mask(0.9) == 0);
    CHECK(node_mask(1.3) == 1);

    // deviation from the exact off-zeros solution is positive there
    CHECK(ef.sample(ef.x1, Cd(1.6, 0.3)) > 0.0);

    auto k = constants();
    double want1 = -2.0 * k.alpha;
    double want2 = -2.0 * std::sqrt(3.0) * k.alpha;
    for (double theta : {0.3, 2.0}) {
      DecayFit fit = decay_fit(ef, theta, kQZ);
      std::printf("decay theta %.1f: x1 %.4f (want %.4f) x2 %.4f (want %.4f)\n",
                  theta, fit.rate_x1, want1, fit.rate_x2, want2);
      CHECK(std::abs(fit.rate_x1 - want1) < 0.05 * std::abs(want1));
      CHECK(std::abs(fit.rate_x2 - want2) < 0.08 * std::abs(want2));
    }
  }
}
