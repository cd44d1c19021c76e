#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "reimann/singular_integrals.hpp"
#include "reimann/zoo.hpp"

using namespace reimann;
using std::numbers::pi;

namespace {

// Complex bump b(z) = chi(|z|) (1 + 0.5 i x) with d b and dbar b by hand.
struct BumpSample {
  Complex b, d, dbar;
};

BumpSample bump_at(const Vec& p) {
  const double chi = bump_profile(p, 1.0);
  const Vec g = bump_profile_gradient(p, 1.0);
  const Complex f(1.0, 0.5 * p[0]);
  const Complex fx(0.0, 0.5), fy(0.0, 0.0);
  const Complex bx = g[0] * f + chi * fx;
  const Complex by = g[1] * f + chi * fy;
  const Complex i(0.0, 1.0);
  return {chi * f, 0.5 * (bx - i * by), 0.5 * (bx + i * by)};
}

GridField complex_grid_of(int n, double hw, Complex (*pick)(const BumpSample&)) {
  GridField g = centered_grid(2, n, hw, BoundaryMode::compact);
  auto& re = g.add("re");
  auto& im = g.add("im");
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Complex v = pick(bump_at(g.point(i)));
    re[i] = v.real();
    im[i] = v.imag();
  }
  return g;
}

double max_abs_diff(const GridField& g, Complex (*pick)(const BumpSample&), double& scale) {
  double err = 0.0;
  scale = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Complex want = pick(bump_at(g.point(i)));
    err = std::max(err, std::abs(Complex(g["re"][i], g["im"][i]) - want));
    scale = std::max(scale, std::abs(want));
  }
  return err;
}

Complex pick_b(const BumpSample& s) { return s.b; }
Complex pick_d(const BumpSample& s) { return s.d; }
Complex pick_dbar(const BumpSample& s) { return s.dbar; }

}  // namespace

TEST_CASE("Cauchy transform recovers b from d b") {
  const auto db = complex_grid_of(128, 1.25, pick_d);
  const auto b = cauchy_transform(db);
  double scale = 0.0;
  const double err = max_abs_diff(b, pick_b, scale);
  MESSAGE("cauchy relative error " << err / scale);
  CHECK(err <= 0.02 * scale);

  GridField zero = centered_grid(2, 16, 1.0, BoundaryMode::compact);
  zero.add("re");
  zero.add("im");
  const auto z = cauchy_transform(zero);
  for (std::size_t i = 0; i < z.size(); ++i) CHECK(std::abs(z["re"][i]) + std::abs(z["im"][i]) == 0.0);

  GridField periodic = centered_grid(2, 16, 1.0, BoundaryMode::periodic);
  periodic.add("re");
  periodic.add("im");
  CHECK_THROWS_AS(cauchy_transform(periodic), DomainError);
}

TEST_CASE("Cauchy transform is linear") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  auto make = [&]() {
    GridField g = centered_grid(2, 24, 1.0, BoundaryMode::compact);
    auto& re = g.add("re");
    auto& im = g.add("im");
    for (std::size_t i = 0; i < g.size(); ++i) {
      re[i] = nd(rng);
      im[i] = nd(rng);
    }
    return g;
  };
  const auto a = make(), b = make();
  GridField mix = a.like();
  mix.add("re");
  mix.add("im");
  for (std::size_t i = 0; i < a.size(); ++i) {
    mix["re"][i] = 2.0 * a["re"][i] - 3.0 * b["im"][i];
    mix["im"][i] = 2.0 * a["im"][i] + 3.0 * b["re"][i];
  }
  // mix = 2 a + 3 i b
  const auto ta = cauchy_transform(a), tb = cauchy_transform(b), tm = cauchy_transform(mix);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Complex want = 2.0 * Complex(ta["re"][i], ta["im"][i]) + Complex(0, 3) * Complex(tb["re"][i], tb["im"][i]);
    CHECK(std::abs(Complex(tm["re"][i], tm["im"][i]) - want) < 1e-10);
  }
}

TEST_CASE("Beurling multiplier recovers dbar b from d b") {
  const auto db = complex_grid_of(128, 1.5, pick_d);
  const auto rep = beurling_recover_dbar_report(db);
  double scale = 0.0;
  const double err = max_abs_diff(rep.dbar, pick_dbar, scale);
  MESSAGE("beurling relative error " << err / scale << ", tail " << rep.tail_fraction);
  CHECK(err <= 0.02 * scale);
  CHECK(rep.tail_fraction < 0.05);

  GridField zero = centered_grid(2, 16, 1.0, BoundaryMode::compact);
  zero.add("re");
  zero.add("im");
  const auto z = beurling_recover_dbar(zero);
  for (std::size_t i = 0; i < z.size(); ++i) CHECK(std::abs(z["re"][i]) + std::abs(z["im"][i]) == 0.0);

  GridField edge = centered_grid(2, 16, 1.0, BoundaryMode::compact);
  edge.add("re")[0] = 1.0;
  edge.add("im");
  CHECK_THROWS_AS(beurling_recover_dbar(edge), DomainError);
}

TEST_CASE("Rankine vortex") {
  const auto omega = disk_vorticity(128);
  const auto u = biot_savart(omega);
  const double h = omega.spacing()[0];
  double err = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Vec p = u.point(i);
    const double r = p.norm();
    if (std::abs(r - 1.0) < 4 * h) continue;
    const double s = r < 1.0 ? 0.5 : 0.5 / (r * r);
    err = std::max(err, std::hypot(u["x"][i] + s * p[1], u["y"][i] - s * p[0]));
  }
  MESSAGE("rankine max error " << err);
  CHECK(err < 0.01);

  const auto field = biot_savart_field(omega);
  for (const Vec& p : {vec2(0.3, 0.2), vec2(-0.5, 0.1), vec2(2.0, 1.0)}) {
    const double r = p.norm();
    const double s = r < 1.0 ? 0.5 : 0.5 / (r * r);
    CHECK((field(p) - vec2(-s * p[1], s * p[0])).norm() < 0.01);
  }
  CHECK_THROWS_AS(quadrant_vorticity(48), DomainError);
}

TEST_CASE("Riesz transforms") {
  GridField g = centered_grid(2, 32, pi, BoundaryMode::periodic);
  auto& f = g.add("f");
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec p = g.point(i);
    f[i] = std::cos(2 * p[0] + 3 * p[1]);
  }
  const double norm = std::sqrt(13.0);
  for (int j : {0, 1}) {
    const auto r = riesz_transform(g, j);
    const double xi = j == 0 ? 2.0 : 3.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Vec p = g.point(i);
      CHECK(std::abs(r["f"][i] - (xi / norm) * std::sin(2 * p[0] + 3 * p[1])) < 1e-12);
    }
  }

  // Band-limited zero-mean data: R_1^2 + R_2^2 = -I.
  std::mt19937_64 rng(8);
  std::normal_distribution<double> nd;
  GridField h = g.like();
  auto& hf = h.add("f");
  for (int m0 = -5; m0 <= 5; ++m0) {
    for (int m1 = -5; m1 <= 5; ++m1) {
      if (m0 == 0 && m1 == 0) continue;
      const double a = nd(rng), phase = nd(rng);
      for (std::size_t i = 0; i < h.size(); ++i) {
        const Vec p = h.point(i);
        hf[i] += a * std::cos(m0 * p[0] + m1 * p[1] + phase);
      }
    }
  }
  GridField sum = h.like();
  auto& sf = sum.add("f");
  for (int j : {0, 1}) {
    const auto once = riesz_transform(h, j);
    const auto twice = riesz_transform(once, j);
    for (std::size_t i = 0; i < h.size(); ++i) sf[i] += twice["f"][i];
  }
  double err = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    err = std::max(err, std::abs(sf[i] + hf[i]));
    scale = std::max(scale, std::abs(hf[i]));
  }
  CHECK(err <= 1e-10 * scale);

  GridField c = g.like();
  c.add("f").assign(c.size(), 4.0);
  const auto rc = riesz_transform(c, 0);
  for (double v : rc["f"]) CHECK(std::abs(v) < 1e-13);
  CHECK_THROWS_AS(riesz_transform(c, 2), DomainError);
  CHECK_THROWS_AS(riesz_transform(c, 0, ZeroModePolicy::error), DomainError);
}

TEST_CASE("Hodge decomposition check") {
  GridField b = centered_grid(2, 32, pi, BoundaryMode::periodic);
  auto& bx = b.add("x");
  auto& by = b.add("y");
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Vec p = b.point(i);
    bx[i] = std::cos(p[0] + 2 * p[1]);
    by[i] = std::sin(3 * p[0]);
  }
  const auto rep = hodge_check(b);
  CHECK(rep.relative_l2 <= 1e-12);
  CHECK(rep.relative_linf <= 1e-12);

  // grad phi with phi = sin(x) cos(2y): no rotational part.
  GridField grad = b.like();
  auto& gx = grad.add("x");
  auto& gy = grad.add("y");
  for (std::size_t i = 0; i < grad.size(); ++i) {
    const Vec p = grad.point(i);
    gx[i] = std::cos(p[0]) * std::cos(2 * p[1]);
    gy[i] = -2 * std::sin(p[0]) * std::sin(2 * p[1]);
  }
  const auto gr = hodge_check(grad);
  CHECK(gr.relative_l2 <= 1e-12);
  CHECK(gr.rotational_part <= 1e-12);
  CHECK(gr.gradient_part == doctest::Approx(1.0).epsilon(1e-12));

  GridField compact = centered_grid(2, 8, 1.0, BoundaryMode::compact);
  compact.add("x");
  compact.add("y");
  CHECK_THROWS_AS(hodge_check(compact), DomainError);
}

TEST_CASE("grid derivative bundle on a linear field") {
  const Mat m = (Mat(2, 2) << 1.2, -0.5, 0.8, 0.3).finished();
  GridField g = centered_grid(2, 16, 1.0, BoundaryMode::compact);
  auto& x = g.add("x");
  auto& y = g.add("y");
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec v = m * g.point(i);
    x[i] = v[0];
    y[i] = v[1];
  }
  const auto bd = grid_derivative_bundle(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(bd["jxx"][i] == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(bd["jxy"][i] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(bd["jyx"][i] == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(bd["jyy"][i] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(bd["div"][i] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(bd["curl"][i] == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(bd["d_re"][i] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(bd["dbar_im"][i] == doctest::Approx(0.15).epsilon(1e-12));
  }
  GridField missing = g.like();
  missing.add("x");
  CHECK_THROWS_AS(grid_derivative_bundle(missing), DomainError);
}
