#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "reimann/types.hpp"

namespace reimann {

/// A deterministic map R^n -> R^n, optionally carrying its closed-form
/// Jacobian. Instances are immutable and cheap to copy.
class VectorField {
 public:
  using EvalFn = std::function<Vec(const Vec&)>;
  using JacobianFn = std::function<Mat(const Vec&)>;

  VectorField(std::string name, int dim, EvalFn eval, JacobianFn jacobian = nullptr,
              double support_radius = kInf);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  double support_radius() const { return support_radius_; }
  bool has_jacobian() const { return static_cast<bool>(jacobian_); }

  Vec operator()(const Vec& x) const;
  Mat jacobian(const Vec& x) const;

  /// Points where the field is continuous but not differentiable. Derivative
  /// based probes skip base points closer than 1e-6 to any of them.
  const std::vector<Vec>& singular_points() const { return singular_points_; }
  VectorField with_singular_points(std::vector<Vec> points) const;

  bool near_singularity(const Vec& x, double tol = 1e-6) const;

  /// v -> lambda * v, keeping the Jacobian when present.
  VectorField scaled(double lambda) const;

 private:
  std::string name_;
  int dim_;
  EvalFn eval_;
  JacobianFn jacobian_;
  double support_radius_;
  std::vector<Vec> singular_points_;
};

/// Deterministic map R^n -> R.
class ScalarField {
 public:
  using EvalFn = std::function<double(const Vec&)>;

  ScalarField(std::string name, int dim, EvalFn eval, double support_radius = kInf);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  double support_radius() const { return support_radius_; }
  double operator()(const Vec& x) const;

  /// One-dimensional jump locations; quadratures align panel edges to them.
  const std::vector<double>& jumps() const { return jumps_; }
  ScalarField with_jumps(std::vector<double> jumps) const;

 private:
  std::string name_;
  int dim_;
  EvalFn eval_;
  double support_radius_;
  std::vector<double> jumps_;
};

/// Logarithmic cutoff: 1 on |x| <= t, 1 - (1/t) log(log|x| / log t) up to
/// |x| = t^(e^t), 0 beyond. Requires t > e.
double cutoff_g(double t, const Vec& x);

/// log of the outer radius t^(e^t) of the cutoff, which overflows a double
/// already for moderate t.
double cutoff_log_outer_radius(double t);

/// Returns g_t * v. The support radius is t^(e^t) (possibly +inf when it does
/// not fit a double); the Jacobian is propagated by the product rule.
VectorField apply_cutoff(const VectorField& v, double t);

}  // namespace reimann
