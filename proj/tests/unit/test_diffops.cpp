#include <doctest.h>

#include <cmath>
#include <random>

#include "reimann/diffops.hpp"
#include "reimann/probes.hpp"
#include "reimann/zoo.hpp"

using namespace reimann;

namespace {

Mat mat2(double a, double b, double c, double d) { return (Mat(2, 2) << a, b, c, d).finished(); }

// Largest singular value of a small matrix from the eigenvalues of M^t M,
// computed by power iteration (independent of the library's closed forms).
double power_norm(const Mat& m) {
  const Mat g = m.transpose() * m;
  Vec x = Vec::Ones(m.cols());
  double lambda = 0.0;
  for (int it = 0; it < 2000; ++it) {
    Vec y = g * x;
    const double n = y.norm();
    if (n == 0.0) return 0.0;
    lambda = n / x.norm();
    x = y / n;
  }
  return std::sqrt(lambda);
}

}  // namespace

TEST_CASE("jacobian_fd examples") {
  const Mat m = mat2(1.2, -0.5, 0.8, 0.3);
  const auto lin = make_linear_field("lin", m);
  CHECK((jacobian_fd(lin, vec2(0.3, -0.7), 1e-3) - m).cwiseAbs().maxCoeff() < 1e-12);

  const auto zsq = *find_zoo_entry("zsq").field;
  const Mat j = jacobian_fd(zsq, vec2(1.0, 0.0), 1e-4);
  CHECK((j - mat2(2, 0, 0, 2)).cwiseAbs().maxCoeff() < 1e-7);

  const VectorField c("c", 2, [](const Vec&) -> Vec { return vec2(3.0, 4.0); });
  CHECK(jacobian_fd(c, vec2(0.1, 0.2), 1e-3).norm() == 0.0);
  CHECK_THROWS_AS(jacobian_fd(c, vec2(0.1, 0.2), -1.0), DomainError);
  CHECK_THROWS_AS(jacobian_fd(c, vec2(0.1, 0.2), 0.0), DomainError);  // no closed form
  CHECK((jacobian_fd(lin, vec2(0.1, 0.2), 0.0) - m).norm() == 0.0);
}

TEST_CASE("derivative bundle examples") {
  const auto rot = derivative_bundle(*find_zoo_entry("rot").field, vec2(0.4, 0.1), 1e-4);
  CHECK(std::abs(rot.div) < 1e-10);
  CHECK(*rot.curl_scalar == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::abs(*rot.d_complex - Complex(0, 1)) < 1e-10);
  CHECK(std::abs(*rot.dbar_complex) < 1e-10);

  const auto conj = derivative_bundle(*find_zoo_entry("conj").field, vec2(-0.2, 0.6), 1e-4);
  CHECK(std::abs(*conj.d_complex) < 1e-10);
  CHECK(std::abs(*conj.dbar_complex - Complex(1, 0)) < 1e-10);
  CHECK((conj.S - mat2(1, 0, 0, -1)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(conj.A.cwiseAbs().maxCoeff() < 1e-10);

  const auto c = derivative_bundle(*find_zoo_entry("const").field, vec2(0.3, 0.3), 1e-4);
  CHECK(c.jacobian.norm() == 0.0);
  CHECK(c.S.norm() == 0.0);
  CHECK(c.A.norm() == 0.0);
  CHECK(c.div == 0.0);
  CHECK(*c.curl_scalar == 0.0);
}

TEST_CASE("bundle invariants on random Jacobians") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 50; ++trial) {
      Mat j(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) j(a, b) = g(rng);
      const auto bd = bundle_from_jacobian(j);
      CHECK((bd.S + bd.A - j).cwiseAbs().maxCoeff() < 1e-14);
      CHECK(std::abs(bd.S.trace()) < 1e-12);
      CHECK((bd.S - bd.S.transpose()).norm() < 1e-14);
      const Mat off = bd.A - Mat(bd.A.diagonal().asDiagonal());
      CHECK((off + off.transpose()).norm() < 1e-14);
      CHECK((bd.curl_matrix - (j - j.transpose())).norm() == 0.0);
      if (n == 2) {
        const Complex d = *bd.d_complex;
        CHECK(std::abs(d - 0.5 * Complex(bd.div, *bd.curl_scalar)) < 1e-14);
        for (int axis = 0; axis < 2; ++axis) {
          const Vec w = axis == 0 ? vec2(1, 0) : vec2(0, 1);
          const Vec aw = bd.A * w;
          CHECK((aw - to_vec(d * to_complex(w))).norm() < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("pointwise limit estimates") {
  const std::vector<double> scales{0.25, 0.125, 0.0625, 0.03125};
  const Mat m = mat2(1.2, -0.5, 0.8, 0.3);
  const auto lin = make_linear_field("lin", m);
  const auto ladder = pointwise_limit_ladder(lin, vec2(0.2, 0.3), RecoveryKind::r0_recovery, scales);
  REQUIRE(ladder.size() == scales.size());
  for (double q : ladder) CHECK(q == doctest::Approx(std::abs(m(1, 0) - m(0, 1))).epsilon(1e-12));

  const Mat m3 = (Mat(3, 3) << 0.5, -1.0, 0.3, 0.4, 0.2, -0.6, -0.2, 0.9, -0.1).finished();
  const auto lin3 = make_linear_field("lin3", m3);
  const Mat w = m3 - m3.transpose();
  const double axial = std::sqrt(w(2, 1) * w(2, 1) + w(0, 2) * w(0, 2) + w(1, 0) * w(1, 0));
  const double est3 = pointwise_limit_estimate(lin3, vec3(0.1, 0.2, 0.3), RecoveryKind::r0_recovery, scales, 256);
  CHECK(est3 <= axial * (1 + 1e-12));
  CHECK(est3 >= 0.95 * axial);

  const auto zsq = *find_zoo_entry("zsq").field;
  double prev_err = kInf;
  for (double r : {0.1, 0.05, 0.025}) {
    const double q = pointwise_limit_estimate(zsq, vec2(1.0, 0.0), RecoveryKind::qbar_recovery, {r}, 64);
    const double err = std::abs(q - 4.0);
    CHECK(err <= 4.0 * r);
    CHECK(err <= prev_err);
    prev_err = err;
  }
  const VectorField c("c", 2, [](const Vec&) -> Vec { return vec2(3.0, 4.0); });
  CHECK(pointwise_limit_estimate(c, vec2(0, 0), RecoveryKind::r_recovery, scales) == 0.0);
  CHECK_THROWS_AS(pointwise_limit_estimate(c, vec2(0, 0), RecoveryKind::r_recovery, {}), DomainError);
}

TEST_CASE("recovery consistency for the polynomial field") {
  const auto zsq = *find_zoo_entry("zsq").field;
  const double r = 1.0 / 128;
  for (const auto& p : random_points(2, 20, 1.0, 21)) {
    const auto b = derivative_bundle(zsq, p, 0.0);
    const double d2 = 2.0 * std::abs(*b.d_complex);
    CHECK(std::abs(pointwise_limit_estimate(zsq, p, RecoveryKind::qbar_recovery, {r}) - d2) <= 8.0 * r);
    CHECK(std::abs(pointwise_limit_estimate(zsq, p, RecoveryKind::r_recovery, {r}) - d2) <= 8.0 * r);
    CHECK(std::abs(pointwise_limit_estimate(zsq, p, RecoveryKind::r0_recovery, {r}) -
                   power_norm(b.curl_matrix)) <= 8.0 * r);
  }
}

TEST_CASE("rotation generators") {
  const auto g2 = rotation_generators(2);
  REQUIRE(g2.matrices.size() == 1);
  CHECK((g2.matrices[0] - mat2(0, 1, -1, 0)).norm() == 0.0);
  CHECK(rotation_generators(3).matrices.size() == 3);
  CHECK(rotation_generators(4).matrices.size() == 6);
  CHECK_THROWS_AS(rotation_generators(1), DomainError);
  for (const auto& j : rotation_generators(4).matrices) {
    CHECK((j.transpose() * j - Mat::Identity(4, 4)).norm() < 1e-15);
  }
  // J_{i,j} e_i = -e_j, J_{i,j} e_j = e_i for the first generator of R^3.
  const Mat j12 = rotation_generators(3).matrices[0];
  CHECK((j12 * vec3(1, 0, 0) - vec3(0, -1, 0)).norm() == 0.0);
  CHECK((j12 * vec3(0, 1, 0) - vec3(1, 0, 0)).norm() == 0.0);
  CHECK((j12 * vec3(0, 0, 1) - vec3(0, 0, 1)).norm() == 0.0);
}

TEST_CASE("rn_attempt_sup examples") {
  CHECK(rn_attempt_sup(mat2(1, 0, 0, -1), rotation_generators(2)) == doctest::Approx(0.0).epsilon(1e-15));
  const Mat d3 = (Mat(3, 3) << 1, 0, 0, 0, -1, 0, 0, 0, 0).finished();
  CHECK(rn_attempt_sup(d3, rotation_generators(3)) == doctest::Approx(1.0).epsilon(1e-14));

  // Enumeration oracle: max over the generators and the identity.
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    Mat m(3, 3);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) m(a, b) = g(rng);
    auto gens = rotation_generators(3);
    double best = power_norm(m.transpose() - m);
    for (const auto& j : gens.matrices) best = std::max(best, power_norm(m.transpose() * j - j.transpose() * m));
    CHECK(rn_attempt_sup(m, gens) == doctest::Approx(best).epsilon(1e-8));

    const Mat anti = m - m.transpose();
    CHECK(rn_attempt_sup(anti, gens) >= 2.0 * power_norm(anti) * (1 - 1e-10));
  }
  CHECK_THROWS_AS(rn_attempt_sup(Mat::Identity(2, 2), rotation_generators(3)), DomainError);
}
