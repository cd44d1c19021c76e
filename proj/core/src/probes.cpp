#include "reimann/probes.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace reimann {

namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Vec fibonacci_point(int i, int count) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - (2.0 * i + 1.0) / count;
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = golden * i;
  return vec3(rho * std::cos(phi), rho * std::sin(phi), z);
}

}  // namespace

std::vector<Vec> random_points(int dim, int count, double box, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    Vec p(dim);
    for (int d = 0; d < dim; ++d) p[d] = box * (2.0 * unit_uniform(rng) - 1.0);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Vec> direction_set(int dim, int count) {
  if (count < 1) throw ConfigError("direction_set: count must be positive");
  std::vector<Vec> out;
  if (dim == 1) {
    Vec a(1), b(1);
    a << 1.0;
    b << -1.0;
    out = {a, b};
  } else if (dim == 2) {
    const int m = ((count + 3) / 4) * 4;
    out.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
      // Exact quarter turns keep the set closed under z -> iz.
      const int quarter = (4 * j) / m;
      const int rem = j - quarter * m / 4;
      const double a = 2.0 * std::numbers::pi * rem / m;
      Complex w(std::cos(a), std::sin(a));
      for (int q = 0; q < quarter; ++q) w = Complex(-w.imag(), w.real());
      out.push_back(to_vec(w));
    }
  } else if (dim == 3) {
    const int half = std::max(1, count / 2);
    for (int i = 0; i < half; ++i) {
      const Vec p = fibonacci_point(i, half);
      out.push_back(p);
      out.push_back(-p);
    }
    for (int d = 0; d < 3; ++d) {
      Vec e = Vec::Zero(3);
      e[d] = 1.0;
      out.push_back(e);
      out.push_back(-e);
    }
  } else {
    throw DomainError("direction_set: dimension must be 1, 2 or 3");
  }
  return out;
}

std::vector<std::pair<Vec, Vec>> frame_pairs(int count) {
  std::vector<std::pair<Vec, Vec>> out;
  if (count <= 0) return out;
  out.reserve(2 * static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const Eigen::Vector3d n = fibonacci_point(i, count);
    Eigen::Vector3d a = Eigen::Vector3d::UnitX();
    if (std::abs(n.x()) > 0.6) a = Eigen::Vector3d::UnitY();
    const Eigen::Vector3d h = n.cross(a).normalized();
    const Eigen::Vector3d k = n.cross(h);
    out.emplace_back(Vec(h), Vec(k));
    out.emplace_back(Vec(k), Vec(h));
  }
  return out;
}

ProbeConfig ProbeConfig::make(int dim, int points, int directions, int J, double r0,
                              std::uint64_t seed, double box) {
  if (points < 0) throw ConfigError("probe config: point count must be nonnegative");
  if (J < 0) throw ConfigError("probe config: scale count must be nonnegative");
  if (!(r0 > 0.0)) throw ConfigError("probe config: r0 must be positive");
  ProbeConfig cfg;
  cfg.base_points.push_back(Vec::Zero(dim));
  for (auto& p : random_points(dim, points, box, seed)) cfg.base_points.push_back(std::move(p));
  cfg.directions = directions;
  for (int j = 0; j <= J; ++j) cfg.scales.push_back(std::ldexp(r0, -j));
  cfg.seed = seed;
  cfg.box = box;
  return cfg;
}

void ProbeConfig::validate(int dim) const {
  if (base_points.empty()) throw ConfigError("probe config: no base points");
  for (const auto& p : base_points) {
    if (p.size() != dim) throw ConfigError("probe config: base point has wrong dimension");
  }
  if (directions < 1) throw ConfigError("probe config: directions must be positive");
  if (frames < 0) throw ConfigError("probe config: frames must be nonnegative");
  if (scales.empty()) throw ConfigError("probe config: empty scale ladder");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0) || !std::isfinite(scales[i]))
      throw ConfigError("probe config: scales must be positive and finite");
    if (i > 0 && !(scales[i] < scales[i - 1]))
      throw ConfigError("probe config: scales must be strictly decreasing");
  }
  if (theta_samples < 1) throw ConfigError("probe config: theta_samples must be positive");
}

nlohmann::ordered_json ProbeConfig::to_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const auto& p : base_points) pts.push_back(std::vector<double>(p.data(), p.data() + p.size()));
  j["base_points"] = pts;
  j["directions"] = directions;
  j["frames"] = frames;
  j["scales"] = scales;
  j["theta_samples"] = theta_samples;
  j["optimal_theta"] = optimal_theta;
  j["seed"] = seed;
  j["pair_mode"] = to_string(pair_mode);
  j["box"] = box;
  return j;
}

std::string ProbeConfig::hash() const { return hex64(fnv1a64(to_json().dump())); }

std::string to_string(PairMode mode) {
  return mode == PairMode::equal_norm ? "equal_norm" : "free";
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace reimann
