#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "reimann/types.hpp"

namespace reimann {

enum class PairMode { equal_norm, free };

/// Sampling schedule for the difference-quotient suprema.
///
/// Offsets are built as h = r * alpha, k = r * beta with r on the dyadic ladder
/// and alpha, beta unit vectors from direction_set(). In the plane the
/// direction set is closed under multiplication by i and -1, so the extremal
/// pairs (h, ih) and (h, -h) are always probed. In R^3, `frames` adds pairs
/// (h, n x h) with n running over a Fibonacci set of normals.
struct ProbeConfig {
  std::vector<Vec> base_points;
  int directions = 64;
  int frames = 0;
  std::vector<double> scales;
  int theta_samples = 64;
  bool optimal_theta = true;
  std::uint64_t seed = 0;
  PairMode pair_mode = PairMode::equal_norm;
  double box = 1.0;

  /// Base points: the origin followed by `points` seeded uniform samples of
  /// [-box, box]^dim. Scales r0 * 2^-j for j = 0..J.
  static ProbeConfig make(int dim, int points, int directions, int J, double r0,
                          std::uint64_t seed, double box = 1.0);

  /// Throws ConfigError on empty or inconsistent schedules.
  void validate(int dim) const;

  nlohmann::ordered_json to_json() const;
  /// FNV-1a over the canonical JSON dump, as 16 hex digits.
  std::string hash() const;
};

/// Seeded uniform points in [-box, box]^dim. Uses raw 64-bit output of
/// mt19937_64 so the sequence is identical across standard libraries.
std::vector<Vec> random_points(int dim, int count, double box, std::uint64_t seed);

/// Unit directions: dim 1 {+1,-1}; dim 2 equispaced angles (count rounded up
/// to a multiple of 4); dim 3 a Fibonacci sphere with antipodes and +-axes.
std::vector<Vec> direction_set(int dim, int count);

/// Orthonormal pairs (h, n x h) and (n x h, h) for `count` Fibonacci normals n.
std::vector<std::pair<Vec, Vec>> frame_pairs(int count);

std::string to_string(PairMode mode);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t value);

}  // namespace reimann
