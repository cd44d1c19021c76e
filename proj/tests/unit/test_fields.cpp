#include <doctest.h>

#include <cmath>
#include <numbers>

#include "reimann/diffops.hpp"
#include "reimann/fields.hpp"
#include "reimann/probes.hpp"
#include "reimann/zoo.hpp"

using namespace reimann;

namespace {

Vec radial(int dim, double r) {
  Vec x = Vec::Zero(dim);
  x[0] = r;
  return x;
}

// d v = ((J00 + J11) + i (J10 - J01)) / 2, read off the matrix columns.
Complex wirtinger_d(const Mat& j) { return {0.5 * (j(0, 0) + j(1, 1)), 0.5 * (j(1, 0) - j(0, 1))}; }
Complex wirtinger_dbar(const Mat& j) { return {0.5 * (j(0, 0) - j(1, 1)), 0.5 * (j(1, 0) + j(0, 1))}; }

// Columns of the matrix of a linear field, from evaluations at the basis.
Mat matrix_of(const VectorField& v) {
  const int n = v.dim();
  Mat m(n, n);
  for (int j = 0; j < n; ++j) {
    Vec e = Vec::Zero(n);
    e[j] = 1.0;
    m.col(j) = v(e);
  }
  return m;
}

}  // namespace

TEST_CASE("cutoff_g on its three branches") {
  CHECK(cutoff_g(3.0, radial(2, 3.0)) == 1.0);
  CHECK(cutoff_g(3.0, radial(2, 1.0)) == 1.0);
  const double outer = std::pow(3.0, std::exp(3.0));
  CHECK(cutoff_g(3.0, radial(2, outer)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cutoff_g(3.0, radial(2, 2.0 * outer)) == 0.0);
  const double mid = std::pow(3.0, std::exp(1.5));
  CHECK(cutoff_g(3.0, radial(2, mid)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cutoff_g rejects t <= e") {
  CHECK_THROWS_AS(cutoff_g(2.0, radial(2, 1.0)), DomainError);
  CHECK_THROWS_AS(cutoff_g(std::numbers::e, radial(2, 1.0)), DomainError);
  CHECK_THROWS_AS(apply_cutoff(make_linear_field("id", Mat::Identity(2, 2)), 1.0), DomainError);
}

TEST_CASE("cutoff_g is monotone and continuous") {
  for (double t : {3.0, 5.0, 8.0}) {
    const double log_outer = cutoff_log_outer_radius(t);
    const double lo = std::log(t) - 1.0;
    const double hi = std::min(log_outer + 1.0, 700.0);
    double prev = 2.0;
    constexpr int steps = 10000;
    for (int i = 0; i <= steps; ++i) {
      const double g = cutoff_g(t, radial(2, std::exp(lo + (hi - lo) * i / steps)));
      CHECK(g <= prev);
      CHECK(g >= 0.0);
      prev = g;
    }
    for (double rho : {t, std::exp(log_outer)}) {
      if (!std::isfinite(rho)) continue;
      const double a = cutoff_g(t, radial(2, rho * (1.0 - 1e-10)));
      const double b = cutoff_g(t, radial(2, rho * (1.0 + 1e-10)));
      CHECK(std::abs(a - b) < 1e-6);
    }
  }
}

TEST_CASE("apply_cutoff agrees with v inside and vanishes outside") {
  const Mat m = (Mat(2, 2) << 1.2, -0.5, 0.8, 0.3).finished();
  const auto v = make_linear_field("lin", m);
  const auto cut = apply_cutoff(v, 3.0);
  const Vec inside = vec2(0.6, 0.8);
  CHECK((cut(inside) - v(inside)).norm() == 0.0);
  const Vec outside = radial(2, std::pow(3.0, std::exp(3.0)) + 1.0);
  CHECK(cut(outside).norm() == 0.0);
  CHECK(cut.support_radius() == doctest::Approx(std::pow(3.0, std::exp(3.0))).epsilon(1e-12));

  const VectorField one("one", 2, [](const Vec&) -> Vec { return vec2(1.0, 0.0); });
  const Vec mid = radial(2, std::pow(3.0, std::exp(1.5)));
  const Vec val = apply_cutoff(one, 3.0)(mid);
  CHECK(val[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(val[1] == 0.0);
}

TEST_CASE("apply_cutoff Jacobian matches central differences") {
  const Mat m = (Mat(2, 2) << 0.0, -1.0, 1.0, 0.0).finished();
  const auto cut = apply_cutoff(make_linear_field("rot", m), 4.0);
  for (double r : {5.0, 9.0, 40.0}) {
    const Vec x = vec2(r * 0.6, r * 0.8);
    const Mat exact = cut.jacobian(x);
    const Mat fd = jacobian_fd(cut, x, 1e-4 * r);
    CHECK((exact - fd).norm() < 1e-7);
  }
}

TEST_CASE("closed-form Jacobians converge at second order") {
  for (int dim : {2, 3}) {
    for (const auto& e : make_zoo(dim)) {
      if (!e.is_pointwise() || !e.field->has_jacobian()) continue;
      const auto& v = *e.field;
      const auto pts = random_points(dim, 100, 0.9, 11);
      double err_coarse = 0.0, err_fine = 0.0;
      for (const auto& p : pts) {
        if (p.norm() < 0.1) continue;  // conjlog is singular at the origin
        const Mat exact = v.jacobian(p);
        err_coarse = std::max(err_coarse, (jacobian_fd(v, p, 1e-2) - exact).cwiseAbs().maxCoeff());
        err_fine = std::max(err_fine, (jacobian_fd(v, p, 5e-3) - exact).cwiseAbs().maxCoeff());
      }
      INFO(e.name);
      if (err_coarse < 1e-10) continue;  // polynomial of degree <= 2: exact up to roundoff
      CHECK(std::log2(err_coarse / err_fine) >= 1.9);
    }
  }
}

TEST_CASE("zoo entries carry provenance and match hand expansions") {
  CHECK_THROWS_AS(make_zoo(4), DomainError);
  CHECK_THROWS_AS(find_zoo_entry("nope"), ConfigError);
  for (int dim : {2, 3}) {
    for (const auto& e : make_zoo(dim)) {
      for (const auto& ev : e.expected) CHECK_FALSE(ev.provenance.empty());
    }
  }

  const auto rot = find_zoo_entry("rot");
  const Mat mr = matrix_of(*rot.field);
  CHECK(wirtinger_d(mr) == Complex(0.0, 1.0));
  CHECK(wirtinger_dbar(mr) == Complex(0.0, 0.0));
  CHECK(mr.trace() == 0.0);
  CHECK(mr(1, 0) - mr(0, 1) == 2.0);
  CHECK(*rot.expect("d_im") == 1.0);
  CHECK(*rot.expect("curl") == 2.0);

  const auto conj = find_zoo_entry("conj");
  const Mat mc = matrix_of(*conj.field);
  CHECK(wirtinger_d(mc) == Complex(0.0, 0.0));
  CHECK(wirtinger_dbar(mc) == Complex(1.0, 0.0));

  // Every linear entry: expected d, dbar, div, curl, lipschitz from its matrix.
  for (const char* name : {"rot", "sym", "generic", "conj"}) {
    const auto e = find_zoo_entry(name);
    const Mat m = matrix_of(*e.field);
    const Complex a = wirtinger_d(m), b = wirtinger_dbar(m);
    INFO(name);
    CHECK(*e.expect("d_re") == doctest::Approx(a.real()).epsilon(1e-14));
    CHECK(*e.expect("d_im") == doctest::Approx(a.imag()).epsilon(1e-14));
    CHECK(*e.expect("dbar_re") == doctest::Approx(b.real()).epsilon(1e-14));
    CHECK(*e.expect("dbar_im") == doctest::Approx(b.imag()).epsilon(1e-14));
    CHECK(*e.expect("qbar") == doctest::Approx(2.0 * std::abs(a)).epsilon(1e-14));
    CHECK(*e.expect("lipschitz") == doctest::Approx(std::abs(a) + std::abs(b)).epsilon(1e-14));
  }
}

TEST_CASE("conjlog: value 0 at the origin and d v = conj(z)/z") {
  const auto e = find_zoo_entry("conjlog");
  CHECK_FALSE(e.lipschitz);
  const auto& v = *e.field;
  CHECK(v(Vec::Zero(2)).norm() == 0.0);
  for (const auto& p : random_points(2, 50, 1.0, 5)) {
    if (p.norm() < 0.05) continue;
    const Complex z = to_complex(p);
    const Complex d = wirtinger_d(jacobian_fd(v, p, 1e-5));
    CHECK(std::abs(d - std::conj(z) / z) < 1e-7);
    CHECK(std::abs(d) == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("scaled fields and singular points") {
  const auto v = make_linear_field("rot", (Mat(2, 2) << 0, -1, 1, 0).finished());
  const auto w = v.scaled(2.5);
  const Vec x = vec2(0.3, -0.4);
  CHECK((w(x) - 2.5 * v(x)).norm() == 0.0);
  CHECK((w.jacobian(x) - 2.5 * v.jacobian(x)).norm() == 0.0);
  const auto s = v.with_singular_points({Vec::Zero(2)});
  CHECK(s.near_singularity(vec2(1e-8, 0.0)));
  CHECK_FALSE(s.near_singularity(vec2(1e-3, 0.0)));
}
