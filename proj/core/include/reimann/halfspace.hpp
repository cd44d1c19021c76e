#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <json.hpp>

#include "reimann/fields.hpp"

namespace reimann {

/// c_n = Gamma((n+1)/2) / pi^((n+1)/2).
double poisson_constant(int n);

// Closed-form Poisson kernel P(z, y) = c_n y / (|z|^2 + y^2)^((n+1)/2) and its
// derivatives. All require y > 0 and throw DomainError otherwise.
double poisson_kernel_value(int n, const Vec& z, double y);
double kernel_dy(int n, const Vec& z, double y);
Vec kernel_dz(int n, const Vec& z, double y);
double kernel_dyy(int n, const Vec& z, double y);
Mat kernel_dzz(int n, const Vec& z, double y);
Vec kernel_dydz(int n, const Vec& z, double y);

struct PoissonKernel {
  int dim;
  double c_n;

  explicit PoissonKernel(int n);
  double operator()(const Vec& z, double y) const { return poisson_kernel_value(dim, z, y); }
};

/// Quadrature used for convolutions against P_y. Integration runs in polar
/// coordinates centered at the evaluation point: radial Gauss-Legendre panels
/// that start geometrically at the kernel width y and become uniform with
/// width support_radius / panels_per_radius; `angular` nodes on the sphere
/// (trapezoid in the plane, Gauss x trapezoid in R^3).
struct QuadratureRule {
  int angular = 64;
  int panels_per_radius = 32;
  int gauss_order = 10;

  nlohmann::ordered_json to_json() const;
};

/// Compactly supported boundary data, scalar or vector valued.
class HarmonicExtension {
 public:
  HarmonicExtension(const VectorField& boundary, QuadratureRule quad = {});
  HarmonicExtension(const ScalarField& boundary, QuadratureRule quad = {});

  int dim() const { return dim_; }
  int components() const { return components_; }
  double support_radius() const { return support_; }
  const QuadratureRule& quadrature() const { return quad_; }
  const std::vector<double>& jumps() const { return jumps_; }
  Vec boundary(const Vec& x) const { return eval_(x); }

 private:
  int dim_;
  int components_;
  double support_;
  std::function<Vec(const Vec&)> eval_;
  std::vector<double> jumps_;
  QuadratureRule quad_;
};

enum class ExtensionOrder { value, dy, dyy, dx };

/// u and its derivatives at (x, y). Rows index boundary components.
struct ExtensionJet {
  Vec value;
  Vec dy;
  Vec dyy;
  Mat dx;                 // components x n
  std::vector<Mat> dxx;   // per component, n x n
  Mat dxdy;               // components x n
};

ExtensionJet extension_jet(const HarmonicExtension& ext, const Vec& x, double y);

/// value, dy, dyy: a components x 1 matrix; dx: components x n.
Mat extend(const HarmonicExtension& ext, const Vec& x, double y, ExtensionOrder order);

struct HalfspacePoint {
  Vec x;
  double y;
};

/// max y (|D_x u| + |d_y u|) over the samples (operator norm for vector data).
double bloch_norm(const HarmonicExtension& ext, const std::vector<HalfspacePoint>& samples);

/// max over samples of y^k times the largest k-th order partial of u in
/// (x, y), over all components. k must be 1 or 2.
double higher_order_blowup_probe(const HarmonicExtension& ext, int k,
                                 const std::vector<HalfspacePoint>& samples);

struct BallFamily {
  std::vector<Vec> centers;
  std::vector<double> radii;

  void validate(int dim) const;
};

/// Integration rule on balls: radial Gauss panels times sphere nodes. In
/// dimension 1 the panels are graded toward the jump points of the data.
struct BallQuadrature {
  int radial_panels = 8;
  int angular = 64;
  int gauss_order = 10;
  int grading_levels = 24;
};

struct SupWitness {
  double value = 0.0;
  Vec center;
  double radius = 0.0;
};

/// Largest mean oscillation (1/|B|) int_B |g - g_B| over the family.
SupWitness bmo_norm(const ScalarField& g, const BallFamily& balls, const BallQuadrature& quad = {});

/// Largest (1/|B|) int_0^delta int_B |grad_{x,y} u|^2 y dx dy over the family.
SupWitness carleson_quantity(const HarmonicExtension& ext, const BallFamily& balls,
                             const BallQuadrature& quad = {});

struct Reconstruction {
  Vec rhs;
  Vec direct;
  double residual = 0.0;
  double relative = 0.0;
};

/// int_0^Y t u_yy(x, t) dt - Y u_y(x, Y) + u(x, Y) with the t integral done by
/// the `level`-point midpoint rule, compared against b(x).
Reconstruction reconstruct_boundary(const HarmonicExtension& ext, const Vec& x, double y_top,
                                    int level);

/// Truncated mass int_{|z| < T} P(z, y) dz computed with the extension
/// machinery (constant data on the ball of radius truncation).
double poisson_mass(int n, double y, double truncation, const QuadratureRule& quad = {});

struct KernelBoundCheck {
  int n = 0;
  int nodes = 0;
  double max_dy_ratio = 0.0;  // |d_y P| / (n P / y)
  double max_dz_ratio = 0.0;  // |D_z P| / (((n+1)/2) P / y)
  bool pass = false;
};

/// Evaluates both derivative-kernel bounds at `nodes` seeded random (z, y).
KernelBoundCheck kernel_bound_check(int n, int nodes, std::uint64_t seed);

}  // namespace reimann
