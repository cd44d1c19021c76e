#include "reimann/zoo.hpp"

#include <cmath>
#include <utility>

namespace reimann {

std::optional<double> ZooEntry::expect(const std::string& key) const {
  for (const auto& e : expected) {
    if (e.key == key) return e.value;
  }
  return std::nullopt;
}

VectorField make_linear_field(std::string name, const Mat& m) {
  if (m.rows() != m.cols()) throw DomainError("make_linear_field: matrix must be square");
  const int n = static_cast<int>(m.rows());
  return VectorField(
      std::move(name), n, [m](const Vec& x) -> Vec { return m * x; },
      [m](const Vec&) -> Mat { return m; });
}

double bump_profile(const Vec& x, double radius) {
  const double s2 = x.squaredNorm() / (radius * radius);
  if (s2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s2));
}

Vec bump_profile_gradient(const Vec& x, double radius) {
  const double s2 = x.squaredNorm() / (radius * radius);
  if (s2 >= 1.0) return Vec::Zero(x.size());
  const double chi = std::exp(1.0 - 1.0 / (1.0 - s2));
  const double d = 1.0 - s2;
  return (-2.0 * chi / (radius * radius * d * d)) * x;
}

VectorField make_bump_field(std::string name, const Vec& offset, const Mat& m, double radius) {
  const int n = static_cast<int>(offset.size());
  if (m.rows() != n || m.cols() != n) throw DomainError("make_bump_field: shape mismatch");
  return VectorField(
      std::move(name), n,
      [offset, m, radius](const Vec& x) -> Vec {
        const double chi = bump_profile(x, radius);
        if (chi == 0.0) return Vec::Zero(x.size());
        return chi * (offset + m * x);
      },
      [offset, m, radius](const Vec& x) -> Mat {
        const double chi = bump_profile(x, radius);
        if (chi == 0.0) return Mat::Zero(x.size(), x.size());
        const Vec w = offset + m * x;
        return chi * m + w * bump_profile_gradient(x, radius).transpose();
      },
      radius);
}

namespace {

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

Mat mat3(std::initializer_list<double> v) {
  Mat m(3, 3);
  auto it = v.begin();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = *it++;
  return m;
}

ZooEntry linear_entry(std::string name, const Mat& m, std::string description,
                      std::vector<ExpectedValue> expected) {
  ZooEntry e;
  e.name = name;
  e.dim = static_cast<int>(m.rows());
  e.lipschitz = true;
  e.description = std::move(description);
  e.field = make_linear_field(std::move(name), m);
  e.expected = std::move(expected);
  return e;
}

// Planar linear fields v = a z + b conj(z): d = a, dbar = b, the Q-bar and R
// suprema are 2|a|, R0 is |curl| = 2|Im a|, Lipschitz constant is |a| + |b|.
constexpr const char* kLinearNote = "hand expansion of v = a z + b conj(z)";

std::vector<ZooEntry> zoo_dim2() {
  std::vector<ZooEntry> zoo;

  zoo.push_back(linear_entry(
      "rot", mat2(0, -1, 1, 0), "rotation generator v(z) = i z",
      {{"d_re", 0.0, kLinearNote},
       {"d_im", 1.0, "d v = (div + i curl)/2 with curl = 2"},
       {"dbar_re", 0.0, kLinearNote},
       {"dbar_im", 0.0, kLinearNote},
       {"div", 0.0, "trace of M"},
       {"curl", 2.0, "M_10 - M_01"},
       {"qbar", 2.0, "2|a| with a = i"},
       {"r", 2.0, "2|a| with a = i"},
       {"r0", 2.0, "operator norm of M - M^t = [[0,-2],[2,0]]"},
       {"zygmund", 0.0, "second differences of linear maps vanish"},
       {"lipschitz", 1.0, "|a| + |b| = 1"}}));

  zoo.push_back(linear_entry(
      "sym", mat2(0, 1, 1, 0), "symmetric traceless v(z) = i conj(z)",
      {{"d_re", 0.0, kLinearNote},
       {"d_im", 0.0, kLinearNote},
       {"dbar_re", 0.0, kLinearNote},
       {"dbar_im", 1.0, "b = i"},
       {"div", 0.0, "trace of M"},
       {"curl", 0.0, "M symmetric"},
       {"qbar", 0.0, "a = 0"},
       {"r", 0.0, "a = 0"},
       {"r0", 0.0, "antisymmetric part vanishes"},
       {"zygmund", 0.0, "linear"},
       {"lipschitz", 1.0, "|b| = 1"}}));

  zoo.push_back(linear_entry(
      "generic", mat2(1.2, -0.5, 0.8, 0.3), "generic linear field",
      {{"d_re", 0.75, "(M00 + M11)/2"},
       {"d_im", 0.65, "(M10 - M01)/2"},
       {"dbar_re", 0.45, "(M00 - M11)/2"},
       {"dbar_im", 0.15, "(M10 + M01)/2"},
       {"div", 1.5, "trace of M"},
       {"curl", 1.3, "M10 - M01"},
       {"qbar", 1.9849433241279208, "2|a| = 2 sqrt(0.985)"},
       {"r", 1.9849433241279208, "2|a| = 2 sqrt(0.985)"},
       {"r0", 1.3, "operator norm of [[0,-1.3],[1.3,0]]"},
       {"zygmund", 0.0, "linear"},
       {"lipschitz", 1.4668133110892172, "|a| + |b| = sqrt(0.985) + sqrt(0.225)"}}));

  zoo.push_back(linear_entry(
      "conj", mat2(1, 0, 0, -1), "conjugation v(z) = conj(z)",
      {{"d_re", 0.0, "d conj(z) = 0"},
       {"d_im", 0.0, "d conj(z) = 0"},
       {"dbar_re", 1.0, "dbar conj(z) = 1"},
       {"dbar_im", 0.0, "dbar conj(z) = 1"},
       {"div", 0.0, "trace of M"},
       {"curl", 0.0, "M symmetric"},
       {"qbar", 0.0, "only Re(b)(|h|^2 - |k|^2) survives, zero for |h| = |k|"},
       {"r", 0.0, "only d v enters"},
       {"r0", 0.0, "M symmetric"},
       {"zygmund", 0.0, "linear"},
       {"lipschitz", 1.0, "|b| = 1"}}));

  {
    ZooEntry e;
    e.name = "zsq";
    e.dim = 2;
    e.lipschitz = false;
    e.description = "holomorphic square v(z) = z^2 (polynomial, d v = 2z unbounded globally)";
    e.field = VectorField(
        "zsq", 2,
        [](const Vec& x) -> Vec { return to_vec(to_complex(x) * to_complex(x)); },
        [](const Vec& x) -> Mat { return mat2(2 * x[0], -2 * x[1], 2 * x[1], 2 * x[0]); });
    e.expected = {{"dbar_abs", 0.0, "z^2 is holomorphic"},
                  {"zygmund", 0.0, "second difference of z^2 is 2h^2, quotient 2|h| -> 0"}};
    zoo.push_back(std::move(e));
  }

  {
    ZooEntry e;
    e.name = "conjlog";
    e.dim = 2;
    e.lipschitz = false;
    e.description =
        "v(z) = conj(z) log|z|^2, v(0) = 0; stand-in for a non-Lipschitz field with bounded d v";
    e.field = VectorField(
                  "conjlog", 2,
                  [](const Vec& x) -> Vec {
                    const double r2 = x.squaredNorm();
                    if (r2 == 0.0) return Vec::Zero(2);
                    const double l = std::log(r2);
                    return vec2(x[0] * l, -x[1] * l);
                  },
                  [](const Vec& x) -> Mat {
                    const double r2 = x.squaredNorm();
                    if (r2 == 0.0) throw DomainError("conjlog: not differentiable at the origin");
                    const double l = std::log(r2);
                    return mat2(l + 2 * x[0] * x[0] / r2, 2 * x[0] * x[1] / r2,
                                -2 * x[0] * x[1] / r2, -l - 2 * x[1] * x[1] / r2);
                  })
                  .with_singular_points({Vec::Zero(2)});
    e.expected = {{"d_abs", 1.0, "Wirtinger calculus: d v = conj(z)/z"},
                  {"zygmund_x_eq_h", 2.772588722239781,
                   "points 0, h, 2h: |2 conj(h) log 4| / |h| = 4 log 2"},
                  {"lipschitz_at_0_slope", 2.0, "|v(h)|/|h| = |log |h|^2| = 2 log(1/|h|)"}};
    zoo.push_back(std::move(e));
  }

  {
    ZooEntry e;
    e.name = "bump";
    e.dim = 2;
    e.lipschitz = true;
    e.description = "chi(|z|) (c + conj(z)), c = 1 + 0.5i, smooth with support radius 1";
    e.field = make_bump_field("bump", vec2(1.0, 0.5), mat2(1, 0, 0, -1), 1.0);
    e.expected = {{"support_radius", 1.0, "chi vanishes for |z| >= 1"},
                  {"value_at_0_re", 1.0, "chi(0) = 1"},
                  {"value_at_0_im", 0.5, "chi(0) = 1"}};
    zoo.push_back(std::move(e));
  }

  {
    ZooEntry e;
    e.name = "const";
    e.dim = 2;
    e.lipschitz = true;
    e.description = "constant field (1, -2)";
    e.field = VectorField(
        "const", 2, [](const Vec&) -> Vec { return vec2(1.0, -2.0); },
        [](const Vec&) -> Mat { return Mat::Zero(2, 2); });
    e.expected = {{"qbar", 0.0, "differences vanish"},
                  {"r", 0.0, "differences vanish"},
                  {"r0", 0.0, "differences vanish"},
                  {"zygmund", 0.0, "differences vanish"},
                  {"lipschitz", 0.0, "differences vanish"}};
    zoo.push_back(std::move(e));
  }

  {
    ZooEntry e;
    e.name = "quadrant";
    e.dim = 2;
    e.lipschitz = false;
    e.description =
        "Biot-Savart velocity of the quadrant vorticity sign(x1 x2) on [-1,1]^2 "
        "(bounded curl, log-Lipschitz)";
    e.grid_recipe = "quadrant";
    e.expected = {{"curl_abs", 1.0, "|omega| = 1 on the support"},
                  {"div", 0.0, "Biot-Savart velocities are divergence free"}};
    zoo.push_back(std::move(e));
  }
  return zoo;
}

std::vector<ZooEntry> zoo_dim3() {
  std::vector<ZooEntry> zoo;
  zoo.push_back(linear_entry(
      "rot3", mat3({0, -1, 0, 1, 0, 0, 0, 0, 0}), "rotation about the x3 axis",
      {{"div", 0.0, "trace"},
       {"r0", 2.0, "M - M^t has axial vector of length 2"},
       {"zygmund", 0.0, "linear"},
       {"lipschitz", 1.0, "rotation block has unit singular values"}}));
  zoo.push_back(linear_entry(
      "sym3", mat3({1, 0.5, 0, 0.5, -1, 0.25, 0, 0.25, 0}), "symmetric traceless linear field",
      {{"div", 0.0, "trace"},
       {"r0", 0.0, "antisymmetric part vanishes"},
       {"zygmund", 0.0, "linear"},
       {"lipschitz", 1.168749737052376, "largest singular value (eigen-oracle)"}}));
  zoo.push_back(linear_entry(
      "generic3", mat3({0.5, -1.0, 0.3, 0.4, 0.2, -0.6, -0.2, 0.9, -0.1}),
      "generic linear field",
      {{"div", 0.6, "trace"},
       {"r0", 2.1118712081942874, "axial vector (1.5, 0.5, 1.4) of M - M^t, length sqrt(4.46)"},
       {"zygmund", 0.0, "linear"},
       {"lipschitz", 1.4808783703577086, "largest singular value (eigen-oracle)"}}));
  {
    ZooEntry e;
    e.name = "bump3";
    e.dim = 3;
    e.lipschitz = true;
    e.description = "chi(|x|) (c + S x), c = (1, 0.5, -0.25), S = diag(1,-1,0)";
    Mat s = Mat::Zero(3, 3);
    s(0, 0) = 1.0;
    s(1, 1) = -1.0;
    e.field = make_bump_field("bump3", vec3(1.0, 0.5, -0.25), s, 1.0);
    e.expected = {{"support_radius", 1.0, "chi vanishes for |x| >= 1"}};
    zoo.push_back(std::move(e));
  }
  {
    ZooEntry e;
    e.name = "const3";
    e.dim = 3;
    e.lipschitz = true;
    e.description = "constant field (0.5, 1, -1)";
    e.field = VectorField(
        "const3", 3, [](const Vec&) -> Vec { return vec3(0.5, 1.0, -1.0); },
        [](const Vec&) -> Mat { return Mat::Zero(3, 3); });
    e.expected = {{"r0", 0.0, "differences vanish"}, {"zygmund", 0.0, "differences vanish"}};
    zoo.push_back(std::move(e));
  }
  return zoo;
}

}  // namespace

std::vector<ZooEntry> make_zoo(int dim) {
  if (dim == 2) return zoo_dim2();
  if (dim == 3) return zoo_dim3();
  throw DomainError("make_zoo: unsupported dimension " + std::to_string(dim));
}

ZooEntry find_zoo_entry(const std::string& name) {
  for (int dim : {2, 3}) {
    for (auto& e : make_zoo(dim)) {
      if (e.name == name) return e;
    }
  }
  throw ConfigError("unknown zoo field '" + name + "'");
}

std::vector<std::string> zoo_names() {
  std::vector<std::string> names;
  for (int dim : {2, 3}) {
    for (const auto& e : make_zoo(dim)) names.push_back(e.name);
  }
  return names;
}

}  // namespace reimann
