#include "reimann/fields.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace reimann {

VectorField::VectorField(std::string name, int dim, EvalFn eval, JacobianFn jacobian,
                         double support_radius)
    : name_(std::move(name)),
      dim_(dim),
      eval_(std::move(eval)),
      jacobian_(std::move(jacobian)),
      support_radius_(support_radius) {
  if (dim_ < 1) throw DomainError("VectorField: dimension must be positive");
  if (!eval_) throw DomainError("VectorField: missing evaluation function");
  if (!(support_radius_ > 0.0)) throw DomainError("VectorField: support radius must be positive");
}

Vec VectorField::operator()(const Vec& x) const {
  if (x.size() != dim_) throw DomainError("VectorField '" + name_ + "': point has wrong dimension");
  return eval_(x);
}

Mat VectorField::jacobian(const Vec& x) const {
  if (!jacobian_) throw DomainError("VectorField '" + name_ + "' has no closed-form Jacobian");
  if (x.size() != dim_) throw DomainError("VectorField '" + name_ + "': point has wrong dimension");
  return jacobian_(x);
}

VectorField VectorField::with_singular_points(std::vector<Vec> points) const {
  VectorField copy = *this;
  copy.singular_points_ = std::move(points);
  return copy;
}

bool VectorField::near_singularity(const Vec& x, double tol) const {
  for (const auto& s : singular_points_) {
    if ((x - s).norm() < tol) return true;
  }
  return false;
}

VectorField VectorField::scaled(double lambda) const {
  auto eval = eval_;
  JacobianFn jac;
  if (jacobian_) {
    auto inner = jacobian_;
    jac = [inner, lambda](const Vec& x) -> Mat { return lambda * inner(x); };
  }
  VectorField out(name_, dim_, [eval, lambda](const Vec& x) -> Vec { return lambda * eval(x); },
                  std::move(jac), support_radius_);
  out.singular_points_ = singular_points_;
  return out;
}

ScalarField::ScalarField(std::string name, int dim, EvalFn eval, double support_radius)
    : name_(std::move(name)), dim_(dim), eval_(std::move(eval)), support_radius_(support_radius) {
  if (dim_ < 1) throw DomainError("ScalarField: dimension must be positive");
  if (!eval_) throw DomainError("ScalarField: missing evaluation function");
  if (!(support_radius_ > 0.0)) throw DomainError("ScalarField: support radius must be positive");
}

double ScalarField::operator()(const Vec& x) const {
  if (x.size() != dim_) throw DomainError("ScalarField '" + name_ + "': point has wrong dimension");
  return eval_(x);
}

ScalarField ScalarField::with_jumps(std::vector<double> jumps) const {
  ScalarField copy = *this;
  copy.jumps_ = std::move(jumps);
  return copy;
}

namespace {

void check_cutoff_parameter(double t) {
  if (!(t > std::numbers::e)) throw DomainError("cutoff_g: t must exceed e");
}

}  // namespace

double cutoff_g(double t, const Vec& x) {
  check_cutoff_parameter(t);
  const double rho = x.norm();
  if (rho <= t) return 1.0;
  // log(log|x| / log t) >= t  <=>  |x| >= t^(e^t)
  const double level = std::log(std::log(rho) / std::log(t));
  if (level >= t) return 0.0;
  return 1.0 - level / t;
}

double cutoff_log_outer_radius(double t) {
  check_cutoff_parameter(t);
  return std::exp(t) * std::log(t);
}

VectorField apply_cutoff(const VectorField& v, double t) {
  check_cutoff_parameter(t);
  const double log_outer = cutoff_log_outer_radius(t);
  const double outer = log_outer < 700.0 ? std::exp(log_outer) : kInf;
  VectorField::JacobianFn jac;
  if (v.has_jacobian()) {
    jac = [v, t](const Vec& x) -> Mat {
      const double g = cutoff_g(t, x);
      Mat out = g * v.jacobian(x);
      const double rho = x.norm();
      if (rho > t && g > 0.0) {
        const Vec grad = -x / (t * rho * rho * std::log(rho));
        out += v(x) * grad.transpose();
      }
      return out;
    };
  }
  auto out = VectorField(
      v.name() + "_cut", v.dim(),
      [v, t](const Vec& x) -> Vec {
        const double g = cutoff_g(t, x);
        if (g == 0.0) return Vec::Zero(x.size());
        return g * v(x);
      },
      std::move(jac), outer);
  return out.with_singular_points(v.singular_points());
}

}  // namespace reimann
