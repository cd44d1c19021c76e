#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "reimann/grid.hpp"
#include "reimann/spectral.hpp"

using namespace reimann;
using std::numbers::pi;

TEST_CASE("grid geometry and json roundtrip") {
  GridField g = centered_grid(2, 8, 1.0, BoundaryMode::compact);
  CHECK(g.size() == 64);
  CHECK(g.spacing()[0] == 0.25);
  CHECK(g.point(0)[0] == doctest::Approx(-0.875));
  const std::size_t f = g.flat({3, 5});
  CHECK(g.multi(f) == std::vector<int>{3, 5});
  auto& re = g.add("re");
  auto& im = g.add("im");
  for (std::size_t i = 0; i < g.size(); ++i) {
    re[i] = std::sin(0.1 * i);
    im[i] = -1.0 / (1.0 + i);
  }
  CHECK(&g.add("re") == &re);

  const GridField back = GridField::from_json(nlohmann::json::parse(g.to_json().dump()));
  CHECK(back.shape() == g.shape());
  CHECK(back.origin() == g.origin());
  CHECK(back.spacing() == g.spacing());
  CHECK(back.mode() == g.mode());
  CHECK(back.names().size() == 2);
  CHECK(back["re"] == g["re"]);
  CHECK(back["im"] == g["im"]);

  auto bad = nlohmann::json::parse(g.to_json().dump());
  bad["components"]["re"].erase(0);
  CHECK_THROWS_AS(GridField::from_json(bad), ConfigError);
  CHECK_THROWS_AS(GridField::load("/nonexistent/grid.json"), ConfigError);
  CHECK_THROWS_AS(parse_boundary_mode("torus"), ConfigError);
  CHECK(parse_boundary_mode(to_string(BoundaryMode::periodic)) == BoundaryMode::periodic);
}

TEST_CASE("compact margin detection") {
  GridField g = centered_grid(2, 16, 1.0, BoundaryMode::compact);
  auto& f = g.add("f");
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = g.point(i).norm() < 0.5 ? 1.0 : 0.0;
  CHECK(g.margin_max(2) == 0.0);
  CHECK_NOTHROW(g.require_compact_margin(2));
  f[g.flat({1, 8})] = 1e-3;
  CHECK(g.margin_max(2) == 1e-3);
  CHECK_THROWS_AS(g.require_compact_margin(2), DomainError);
}

TEST_CASE("spectral derivative of a single mode") {
  GridField g = centered_grid(2, 32, pi, BoundaryMode::periodic);
  const auto plan = SpectralPlan::for_grid(g);
  std::vector<double> f(g.size()), dfx(g.size()), dfy(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec p = g.point(i);
    f[i] = std::sin(3 * p[0] - 2 * p[1]);
    dfx[i] = 3 * std::cos(3 * p[0] - 2 * p[1]);
    dfy[i] = -2 * std::cos(3 * p[0] - 2 * p[1]);
  }
  const auto gx = plan.derivative(f, 0);
  const auto gy = plan.derivative(f, 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(std::abs(gx[i] - dfx[i]) < 1e-12);
    CHECK(std::abs(gy[i] - dfy[i]) < 1e-12);
  }
  CHECK(plan.wavenumber(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(plan.derivative_wavenumber(0, 16) == 0.0);
}

TEST_CASE("spectral transforms are linear, invertible and translation covariant") {
  SpectralPlan plan({16, 8}, {0.5, 0.25});
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  std::vector<Complex> a(plan.size()), b(plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) {
    a[i] = {nd(rng), nd(rng)};
    b[i] = {nd(rng), nd(rng)};
  }
  const auto back = plan.inverse(plan.forward(a));
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(back[i] - a[i]) < 1e-13);

  const auto sym = [](const Vec& k) { return Complex(0.0, k[0] - 2.0 * k[1]); };
  std::vector<Complex> mix(plan.size());
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = 2.0 * a[i] - b[i];
  const auto pa = plan.apply(a, sym), pb = plan.apply(b, sym), pm = plan.apply(mix, sym);
  for (std::size_t i = 0; i < mix.size(); ++i) CHECK(std::abs(pm[i] - (2.0 * pa[i] - pb[i])) < 1e-12);

  // Shifting the input by one cell along axis 1 shifts the output.
  std::vector<Complex> shifted(plan.size());
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 8; ++j) shifted[i * 8 + (j + 1) % 8] = a[i * 8 + j];
  const auto ps = plan.apply(shifted, sym);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 8; ++j) CHECK(std::abs(ps[i * 8 + (j + 1) % 8] - pa[i * 8 + j]) < 1e-12);
}

TEST_CASE("zero mode policies") {
  SpectralPlan keep({8}, {1.0});
  SpectralPlan strict({8}, {1.0}, ZeroModePolicy::error);
  std::vector<double> f{1, 2, 3, 4, 5, 6, 7, 8};
  const auto z = keep.zero_mode(f);
  double mean = 0.0;
  for (double v : z) mean += v;
  CHECK(std::abs(mean) < 1e-13);
  CHECK(z[0] == doctest::Approx(-3.5));
  CHECK_THROWS_AS(strict.zero_mode(f), DomainError);
  CHECK_NOTHROW(strict.zero_mode(z));
}
