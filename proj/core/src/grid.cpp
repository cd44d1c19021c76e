#include "reimann/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace reimann {

std::string to_string(BoundaryMode mode) { return mode == BoundaryMode::periodic ? "periodic" : "compact"; }

BoundaryMode parse_boundary_mode(const std::string& name) {
  if (name == "periodic") return BoundaryMode::periodic;
  if (name == "compact") return BoundaryMode::compact;
  throw ConfigError("unknown boundary mode '" + name + "'");
}

GridField::GridField(std::vector<int> shape, std::vector<double> origin, std::vector<double> spacing,
                     BoundaryMode mode)
    : shape_(std::move(shape)), origin_(std::move(origin)), spacing_(std::move(spacing)), mode_(mode) {
  if (shape_.empty() || shape_.size() > 3) throw DomainError("GridField: dimension must be 1, 2 or 3");
  if (origin_.size() != shape_.size() || spacing_.size() != shape_.size())
    throw DomainError("GridField: origin and spacing must match the shape");
  size_ = 1;
  for (std::size_t a = 0; a < shape_.size(); ++a) {
    if (shape_[a] < 1) throw DomainError("GridField: sample counts must be positive");
    if (!(spacing_[a] > 0.0)) throw DomainError("GridField: spacing must be positive");
    size_ *= static_cast<std::size_t>(shape_[a]);
  }
}

bool GridField::has(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::vector<double>& GridField::add(const std::string& name) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return data_[i];
  }
  names_.push_back(name);
  data_.emplace_back(size_, 0.0);
  return data_.back();
}

std::vector<double>& GridField::operator[](const std::string& name) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return data_[i];
  }
  throw DomainError("GridField: no component '" + name + "'");
}

const std::vector<double>& GridField::operator[](const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return data_[i];
  }
  throw DomainError("GridField: no component '" + name + "'");
}

std::size_t GridField::flat(const std::vector<int>& idx) const {
  std::size_t f = 0;
  for (std::size_t a = 0; a < shape_.size(); ++a) f = f * shape_[a] + static_cast<std::size_t>(idx[a]);
  return f;
}

std::vector<int> GridField::multi(std::size_t flat) const {
  std::vector<int> idx(shape_.size());
  for (std::size_t a = shape_.size(); a-- > 0;) {
    idx[a] = static_cast<int>(flat % shape_[a]);
    flat /= shape_[a];
  }
  return idx;
}

Vec GridField::point(std::size_t flat) const {
  const auto idx = multi(flat);
  Vec p(dim());
  for (int a = 0; a < dim(); ++a) p[a] = origin_[a] + idx[a] * spacing_[a];
  return p;
}

GridField GridField::like() const { return GridField(shape_, origin_, spacing_, mode_); }

double GridField::margin_max(int cells) const {
  double m = 0.0;
  for (std::size_t f = 0; f < size_; ++f) {
    const auto idx = multi(f);
    bool edge = false;
    for (std::size_t a = 0; a < shape_.size(); ++a) {
      if (idx[a] < cells || idx[a] >= shape_[a] - cells) edge = true;
    }
    if (!edge) continue;
    for (const auto& d : data_) m = std::max(m, std::abs(d[f]));
  }
  return m;
}

void GridField::require_compact_margin(int cells) const {
  if (margin_max(cells) != 0.0)
    throw DomainError("GridField: data does not vanish on the " + std::to_string(cells) + "-cell margin");
}

nlohmann::ordered_json GridField::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = dim();
  j["shape"] = shape_;
  j["origin"] = origin_;
  j["spacing"] = spacing_;
  j["boundary_mode"] = to_string(mode_);
  nlohmann::ordered_json comps = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < names_.size(); ++i) comps[names_[i]] = data_[i];
  j["components"] = comps;
  return j;
}

GridField GridField::from_json(const nlohmann::json& j) {
  try {
    GridField g(j.at("shape").get<std::vector<int>>(), j.at("origin").get<std::vector<double>>(),
                j.at("spacing").get<std::vector<double>>(),
                parse_boundary_mode(j.at("boundary_mode").get<std::string>()));
    if (j.contains("dim") && j.at("dim").get<int>() != g.dim())
      throw ConfigError("grid file: dim does not match shape");
    for (const auto& [name, values] : j.at("components").items()) {
      auto v = values.get<std::vector<double>>();
      if (v.size() != g.size()) throw ConfigError("grid file: component '" + name + "' has wrong length");
      g.add(name) = std::move(v);
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("grid file: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("grid file: ") + e.what());
  }
}

GridField GridField::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open grid file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("grid file '" + path + "': " + e.what());
  }
  return from_json(j);
}

void GridField::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << to_json().dump() << '\n';
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::vector<std::string> vector_component_names(int dim) {
  static const char* axes[] = {"x", "y", "z"};
  std::vector<std::string> out;
  for (int a = 0; a < dim; ++a) out.emplace_back(axes[a]);
  return out;
}

std::vector<std::string> matrix_component_names(int dim) {
  const auto v = vector_component_names(dim);
  std::vector<std::string> out;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) out.push_back(v[i] + v[j]);
  return out;
}

GridField centered_grid(int dim, int n, double half_width, BoundaryMode mode) {
  if (n < 1) throw DomainError("centered_grid: sample count must be positive");
  if (!(half_width > 0.0)) throw DomainError("centered_grid: half width must be positive");
  const double h = 2.0 * half_width / n;
  return GridField(std::vector<int>(dim, n), std::vector<double>(dim, -half_width + 0.5 * h),
                   std::vector<double>(dim, h), mode);
}

}  // namespace reimann
