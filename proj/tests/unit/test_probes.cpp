#include <doctest.h>

#include <cmath>

#include "reimann/probes.hpp"

using namespace reimann;

namespace {

bool contains(const std::vector<Vec>& set, const Vec& v, double tol = 1e-15) {
  for (const auto& w : set) {
    if ((w - v).norm() <= tol) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("planar directions are closed under quarter turns") {
  const auto dirs = direction_set(2, 10);
  CHECK(dirs.size() == 12);
  for (const auto& d : dirs) {
    CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(contains(dirs, vec2(-d[1], d[0])));
    CHECK(contains(dirs, -d));
  }
  CHECK(contains(dirs, vec2(1.0, 0.0)));
  CHECK(direction_set(2, 64).size() == 64);
}

TEST_CASE("spatial directions contain axes and antipodes") {
  const auto dirs = direction_set(3, 40);
  for (const auto& d : dirs) {
    CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(contains(dirs, -d));
  }
  for (int a = 0; a < 3; ++a) {
    Vec e = Vec::Zero(3);
    e[a] = 1.0;
    CHECK(contains(dirs, e));
    CHECK(contains(dirs, -e));
  }
  const auto one = direction_set(1, 5);
  CHECK(one.size() == 2);
}

TEST_CASE("frame pairs are orthonormal") {
  const auto frames = frame_pairs(32);
  CHECK(frames.size() == 64);
  for (const auto& [h, k] : frames) {
    CHECK(h.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(k.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(h.dot(k)) < 1e-14);
  }
}

TEST_CASE("random points are seeded and bounded") {
  const auto a = random_points(3, 100, 2.0, 42);
  const auto b = random_points(3, 100, 2.0, 42);
  const auto c = random_points(3, 100, 2.0, 43);
  REQUIRE(a.size() == 100);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK((a[i] - b[i]).norm() == 0.0);
    CHECK(a[i].cwiseAbs().maxCoeff() <= 2.0);
    differs = differs || (a[i] - c[i]).norm() > 0.0;
  }
  CHECK(differs);
  // A longer draw extends a shorter one.
  const auto longer = random_points(3, 200, 2.0, 42);
  CHECK((longer[99] - a[99]).norm() == 0.0);
}

TEST_CASE("probe config construction, validation and hashing") {
  const auto cfg = ProbeConfig::make(2, 8, 16, 4, 0.5, 7);
  CHECK(cfg.base_points.size() == 9);
  CHECK(cfg.base_points[0].norm() == 0.0);
  REQUIRE(cfg.scales.size() == 5);
  CHECK(cfg.scales[0] == 0.5);
  CHECK(cfg.scales[4] == 0.5 / 16);
  CHECK_NOTHROW(cfg.validate(2));
  CHECK_THROWS_AS(cfg.validate(3), ConfigError);

  CHECK(cfg.hash() == ProbeConfig::make(2, 8, 16, 4, 0.5, 7).hash());
  CHECK(cfg.hash() != ProbeConfig::make(2, 8, 16, 4, 0.5, 8).hash());
  CHECK(cfg.hash().size() == 16);

  auto bad = cfg;
  bad.scales = {0.5, 0.5};
  CHECK_THROWS_AS(bad.validate(2), ConfigError);
  bad.scales = {};
  CHECK_THROWS_AS(bad.validate(2), ConfigError);
  bad = cfg;
  bad.scales = {0.5, -0.25};
  CHECK_THROWS_AS(bad.validate(2), ConfigError);
  bad = cfg;
  bad.base_points.clear();
  CHECK_THROWS_AS(bad.validate(2), ConfigError);
  CHECK_THROWS_AS(ProbeConfig::make(2, 1, 8, 2, 0.0, 1), ConfigError);
}

TEST_CASE("fnv1a64 reference values") {
  // Published FNV-1a test vectors.
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hex64(0xaf63dc4c8601ec8cULL) == "af63dc4c8601ec8c");
}
