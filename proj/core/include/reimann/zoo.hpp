#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reimann/fields.hpp"

namespace reimann {

/// A closed-form quantity attached to a zoo field, with how it was obtained.
struct ExpectedValue {
  std::string key;
  double value;
  std::string provenance;
};

/// One member of the analytic test-field zoo. Grid-only members (the quadrant
/// vorticity) carry a recipe name instead of a pointwise field.
struct ZooEntry {
  std::string name;
  int dim = 2;
  bool lipschitz = true;
  std::string description;
  std::optional<VectorField> field;
  std::string grid_recipe;
  std::vector<ExpectedValue> expected;

  std::optional<double> expect(const std::string& key) const;
  bool is_pointwise() const { return field.has_value(); }
};

/// Builds the zoo for dim 2 or 3. Throws DomainError for other dimensions.
std::vector<ZooEntry> make_zoo(int dim);

/// Looks a field up by name across both dimensions. Throws ConfigError.
ZooEntry find_zoo_entry(const std::string& name);

/// All zoo names (dim 2 first, then dim 3).
std::vector<std::string> zoo_names();

/// v(x) = M x.
VectorField make_linear_field(std::string name, const Mat& m);

/// Smooth compactly supported profile exp(1 - 1/(1 - s^2)) for s = |x|/radius < 1,
/// equal to 1 at the origin.
double bump_profile(const Vec& x, double radius);
Vec bump_profile_gradient(const Vec& x, double radius);

/// v(x) = chi(|x|/radius) (offset + M x).
VectorField make_bump_field(std::string name, const Vec& offset, const Mat& m, double radius);

}  // namespace reimann
