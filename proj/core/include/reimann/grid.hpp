#pragma once

#include <deque>
#include <string>
#include <vector>

#include <json.hpp>

#include "reimann/types.hpp"

namespace reimann {

enum class BoundaryMode { periodic, compact };

std::string to_string(BoundaryMode mode);
BoundaryMode parse_boundary_mode(const std::string& name);

/// Uniform samples of scalar, complex, vector or matrix data on a box in
/// R^1..R^3. Sample (i0, i1, i2) sits at origin + (i0, i1, i2) * spacing and is
/// the center of its cell; storage is row-major with axis 0 slowest.
///
/// Component names follow fixed conventions: "f" for scalars, "re"/"im" for
/// complex scalars, "x"/"y"/"z" for vectors and "xx", "xy", ... for matrices.
class GridField {
 public:
  GridField() = default;
  GridField(std::vector<int> shape, std::vector<double> origin, std::vector<double> spacing,
            BoundaryMode mode);

  int dim() const { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }
  const std::vector<double>& origin() const { return origin_; }
  const std::vector<double>& spacing() const { return spacing_; }
  BoundaryMode mode() const { return mode_; }
  std::size_t size() const { return size_; }

  const std::vector<std::string>& names() const { return names_; }
  bool has(const std::string& name) const;
  /// Adds a zero-initialized component (or returns the existing one).
  /// References to components stay valid when more are added.
  std::vector<double>& add(const std::string& name);
  std::vector<double>& operator[](const std::string& name);
  const std::vector<double>& operator[](const std::string& name) const;

  /// Flat index of a multi-index; multi-index of a flat index.
  std::size_t flat(const std::vector<int>& idx) const;
  std::vector<int> multi(std::size_t flat) const;
  Vec point(std::size_t flat) const;

  /// Same geometry, no components.
  GridField like() const;

  /// Largest |value| over the outermost `cells` layers, across components.
  double margin_max(int cells = 2) const;
  /// Throws DomainError unless every component vanishes on the margin.
  void require_compact_margin(int cells = 2) const;

  nlohmann::ordered_json to_json() const;
  static GridField from_json(const nlohmann::json& j);
  static GridField load(const std::string& path);
  void save(const std::string& path) const;

 private:
  std::vector<int> shape_;
  std::vector<double> origin_;
  std::vector<double> spacing_;
  BoundaryMode mode_ = BoundaryMode::compact;
  std::size_t size_ = 0;
  std::vector<std::string> names_;
  std::deque<std::vector<double>> data_;  // stable references across add()
};

/// "x", "y", "z" truncated to dim.
std::vector<std::string> vector_component_names(int dim);
/// Row-major "xx", "xy", ... for dim x dim matrices.
std::vector<std::string> matrix_component_names(int dim);

/// Cell-centered grid of `n` samples per axis on [-half_width, half_width]^dim.
GridField centered_grid(int dim, int n, double half_width, BoundaryMode mode);

}  // namespace reimann
