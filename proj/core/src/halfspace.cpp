#include "reimann/halfspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "reimann/linalg.hpp"
#include "reimann/parallel.hpp"
#include "reimann/probes.hpp"

namespace reimann {

namespace {

void require_height(double y, const char* what) {
  if (!(y > 0.0)) throw DomainError(std::string(what) + ": y must be positive");
}

void require_dim(int n, const Vec& z, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + ": dimension must be positive");
  if (z.size() != n) throw DomainError(std::string(what) + ": point has wrong dimension");
}

double rect_norm(const Mat& m) {
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  if (m.rows() == m.cols()) return operator_norm(m);
  return Eigen::JacobiSVD<Mat>(m).singularValues()(0);
}

struct AngularNode {
  Vec dir;
  double weight;
};

std::vector<AngularNode> sphere_nodes(int n, int m) {
  std::vector<AngularNode> out;
  if (n == 1) {
    Vec a(1), b(1);
    a << 1.0;
    b << -1.0;
    out.push_back({a, 1.0});
    out.push_back({b, 1.0});
  } else if (n == 2) {
    for (int j = 0; j < m; ++j) {
      const double t = 2.0 * std::numbers::pi * j / m;
      out.push_back({vec2(std::cos(t), std::sin(t)), 2.0 * std::numbers::pi / m});
    }
  } else if (n == 3) {
    const auto g = gauss_legendre(std::max(1, m / 2));
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double c = g.nodes[i];
      const double s = std::sqrt(1.0 - c * c);
      for (int j = 0; j < m; ++j) {
        const double p = 2.0 * std::numbers::pi * j / m;
        out.push_back({vec3(s * std::cos(p), s * std::sin(p), c), g.weights[i] * 2.0 * std::numbers::pi / m});
      }
    }
  } else {
    throw DomainError("half-space quadrature supports n = 1, 2, 3");
  }
  return out;
}

// 0, y/2, y, 2y, ... while panels stay narrower than cap, then uniform steps.
std::vector<double> radial_breaks(double y, double rho_max, double cap) {
  std::vector<double> b{0.0};
  double next = 0.5 * y;
  while (next < rho_max && next - b.back() <= cap) {
    b.push_back(next);
    next *= 2.0;
  }
  const double start = b.back();
  const int steps = std::max(1, static_cast<int>(std::ceil((rho_max - start) / cap)));
  for (int i = 1; i <= steps; ++i) b.push_back(start + (rho_max - start) * i / steps);
  return b;
}

void add_breaks(std::vector<double>& breaks, const std::vector<double>& extra) {
  const double hi = breaks.back();
  for (double e : extra) {
    if (e > 0.0 && e < hi) breaks.push_back(e);
  }
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> out;
  for (double b : breaks) {
    if (out.empty() || b - out.back() > 1e-13 * b) out.push_back(b);
  }
  breaks.swap(out);
}

void append_panel(double a, double b, const GaussRule& g, std::vector<double>& nodes,
                  std::vector<double>& weights) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    nodes.push_back(mid + half * g.nodes[i]);
    weights.push_back(half * g.weights[i]);
  }
}

// Composite Gauss rule on [a, b]: `panels` uniform panels, the first/last
// graded geometrically toward a/b when flagged singular.
void graded_interval(double a, double b, bool grade_left, bool grade_right, int panels, int levels,
                     const GaussRule& g, std::vector<double>& nodes, std::vector<double>& weights) {
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + h * p;
    const double hi = (p == panels - 1) ? b : a + h * (p + 1);
    const bool left = grade_left && p == 0;
    const bool right = grade_right && p == panels - 1;
    if (!left && !right) {
      append_panel(lo, hi, g, nodes, weights);
      continue;
    }
    std::vector<double> br{lo, hi};
    const double w = hi - lo;
    for (int k = 1; k <= levels; ++k) {
      const double d = w * std::ldexp(1.0, -k);
      if (left) br.push_back(lo + d);
      if (right) br.push_back(hi - d);
    }
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    for (std::size_t i = 0; i + 1 < br.size(); ++i) append_panel(br[i], br[i + 1], g, nodes, weights);
  }
}

enum Need : unsigned {
  kValue = 1,
  kDy = 2,
  kDyy = 4,
  kDx = 8,
  kDxx = 16,
  kDxdy = 32,
};

ExtensionJet compute_jet(const HarmonicExtension& ext, const Vec& x, double y, unsigned need) {
  require_height(y, "extend");
  const int n = ext.dim();
  const int m = ext.components();
  if (x.size() != n) throw DomainError("extend: point has wrong dimension");
  const auto& quad = ext.quadrature();
  const double c = poisson_constant(n);
  const double np1 = n + 1.0;
  const double R = ext.support_radius();

  ExtensionJet jet;
  jet.value = Vec::Zero(m);
  jet.dy = Vec::Zero(m);
  jet.dyy = Vec::Zero(m);
  jet.dx = Mat::Zero(m, n);
  jet.dxx.assign(static_cast<std::size_t>(m), Mat::Zero(n, n));
  jet.dxdy = Mat::Zero(m, n);

  const double rho_max = R + x.norm();
  const auto base = radial_breaks(y, rho_max, R / quad.panels_per_radius);
  const auto gl = gauss_legendre(quad.gauss_order);
  const auto angular = sphere_nodes(n, quad.angular);

  std::vector<double> nodes, weights;
  for (const auto& ang : angular) {
    auto breaks = base;
    if (n == 1) {
      std::vector<double> extra;
      for (double s : ext.jumps()) extra.push_back(ang.dir[0] * (x[0] - s));
      extra.push_back(ang.dir[0] * (x[0] - R));
      extra.push_back(ang.dir[0] * (x[0] + R));
      add_breaks(breaks, extra);
    } else {
      add_breaks(breaks, {R - x.norm()});
    }
    nodes.clear();
    weights.clear();
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) append_panel(breaks[i], breaks[i + 1], gl, nodes, weights);

    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double rho = nodes[i];
      const Vec z = rho * ang.dir;
      const Vec w = x - z;
      if (w.norm() >= R) continue;
      const Vec bv = ext.boundary(w);
      if (bv.isZero(0.0)) continue;
      const double wt = ang.weight * weights[i] * std::pow(rho, n - 1);
      const double r2 = rho * rho;
      const double s = r2 + y * y;
      const double s1 = std::pow(s, -0.5 * np1);
      const double s3 = s1 / s;
      const double s5 = s3 / s;
      const double p = c * y * s1;
      if (need & kValue) jet.value += (wt * p) * bv;
      if (need & kDy) jet.dy += (wt * c * s3 * (r2 - n * y * y)) * bv;
      if (need & kDyy) jet.dyy += (wt * np1 * p * (n * y * y - 3.0 * r2) / (s * s)) * bv;
      if (need & kDx) jet.dx += bv * ((-wt * np1 * c * y * s3) * z).transpose();
      if (need & kDxx) {
        Mat k = (-np1 * c * y) * (s3 * Mat::Identity(n, n) - ((n + 3.0) * s5) * (z * z.transpose()));
        for (int comp = 0; comp < m; ++comp) jet.dxx[comp] += (wt * bv[comp]) * k;
      }
      if (need & kDxdy) jet.dxdy += bv * ((-wt * np1 * c * (s3 - (n + 3.0) * y * y * s5)) * z).transpose();
    }
  }
  return jet;
}

struct WeightedNodes {
  std::vector<Vec> points;
  std::vector<double> weights;
};

WeightedNodes ball_nodes(const Vec& center, double radius, const BallQuadrature& q,
                         const std::vector<double>& singular) {
  const int n = static_cast<int>(center.size());
  const auto gl = gauss_legendre(q.gauss_order);
  WeightedNodes out;
  if (n == 1) {
    std::vector<double> br{center[0] - radius, center[0] + radius};
    for (double s : singular) {
      if (s > br.front() && s < br.back()) br.push_back(s);
    }
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    std::vector<double> nodes, weights;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
      graded_interval(br[i], br[i + 1], i > 0, i + 2 < br.size(), q.radial_panels, q.grading_levels, gl,
                      nodes, weights);
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      Vec p(1);
      p << nodes[i];
      out.points.push_back(p);
      out.weights.push_back(weights[i]);
    }
    return out;
  }
  std::vector<double> rn, rw;
  graded_interval(0.0, radius, false, false, q.radial_panels, 0, gl, rn, rw);
  for (const auto& ang : sphere_nodes(n, q.angular)) {
    for (std::size_t i = 0; i < rn.size(); ++i) {
      out.points.push_back(center + rn[i] * ang.dir);
      out.weights.push_back(ang.weight * rw[i] * std::pow(rn[i], n - 1));
    }
  }
  return out;
}

}  // namespace

double poisson_constant(int n) {
  if (n < 1) throw DomainError("poisson_constant: dimension must be positive");
  const double a = 0.5 * (n + 1);
  return std::tgamma(a) / std::pow(std::numbers::pi, a);
}

double poisson_kernel_value(int n, const Vec& z, double y) {
  require_dim(n, z, "poisson_kernel_value");
  require_height(y, "poisson_kernel_value");
  return poisson_constant(n) * y * std::pow(z.squaredNorm() + y * y, -0.5 * (n + 1));
}

double kernel_dy(int n, const Vec& z, double y) {
  require_dim(n, z, "kernel_dy");
  require_height(y, "kernel_dy");
  const double r2 = z.squaredNorm();
  return poisson_constant(n) * std::pow(r2 + y * y, -0.5 * (n + 3)) * (r2 - n * y * y);
}

Vec kernel_dz(int n, const Vec& z, double y) {
  require_dim(n, z, "kernel_dz");
  require_height(y, "kernel_dz");
  return (-(n + 1.0) * poisson_constant(n) * y * std::pow(z.squaredNorm() + y * y, -0.5 * (n + 3))) * z;
}

double kernel_dyy(int n, const Vec& z, double y) {
  require_dim(n, z, "kernel_dyy");
  require_height(y, "kernel_dyy");
  const double r2 = z.squaredNorm();
  const double s = r2 + y * y;
  return (n + 1.0) * poisson_kernel_value(n, z, y) * (n * y * y - 3.0 * r2) / (s * s);
}

Mat kernel_dzz(int n, const Vec& z, double y) {
  require_dim(n, z, "kernel_dzz");
  require_height(y, "kernel_dzz");
  const double s = z.squaredNorm() + y * y;
  const double s3 = std::pow(s, -0.5 * (n + 3));
  return (-(n + 1.0) * poisson_constant(n) * y) *
         (s3 * Mat::Identity(n, n) - ((n + 3.0) * s3 / s) * (z * z.transpose()));
}

Vec kernel_dydz(int n, const Vec& z, double y) {
  require_dim(n, z, "kernel_dydz");
  require_height(y, "kernel_dydz");
  const double s = z.squaredNorm() + y * y;
  const double s3 = std::pow(s, -0.5 * (n + 3));
  return (-(n + 1.0) * poisson_constant(n) * (s3 - (n + 3.0) * y * y * s3 / s)) * z;
}

PoissonKernel::PoissonKernel(int n) : dim(n), c_n(poisson_constant(n)) {}

nlohmann::ordered_json QuadratureRule::to_json() const {
  return {{"angular", angular},
          {"panels_per_radius", panels_per_radius},
          {"gauss_order", gauss_order}};
}

HarmonicExtension::HarmonicExtension(const VectorField& boundary, QuadratureRule quad)
    : dim_(boundary.dim()),
      components_(boundary.dim()),
      support_(boundary.support_radius()),
      eval_([boundary](const Vec& x) { return boundary(x); }),
      quad_(quad) {
  if (!std::isfinite(support_))
    throw DomainError("HarmonicExtension: boundary data must have finite support radius");
  if (dim_ > 3) throw DomainError("HarmonicExtension: dimension must be at most 3");
}

HarmonicExtension::HarmonicExtension(const ScalarField& boundary, QuadratureRule quad)
    : dim_(boundary.dim()),
      components_(1),
      support_(boundary.support_radius()),
      eval_([boundary](const Vec& x) {
        Vec out(1);
        out << boundary(x);
        return out;
      }),
      jumps_(boundary.jumps()),
      quad_(quad) {
  if (!std::isfinite(support_))
    throw DomainError("HarmonicExtension: boundary data must have finite support radius");
  if (dim_ > 3) throw DomainError("HarmonicExtension: dimension must be at most 3");
}

ExtensionJet extension_jet(const HarmonicExtension& ext, const Vec& x, double y) {
  return compute_jet(ext, x, y, kValue | kDy | kDyy | kDx | kDxx | kDxdy);
}

Mat extend(const HarmonicExtension& ext, const Vec& x, double y, ExtensionOrder order) {
  switch (order) {
    case ExtensionOrder::value: return compute_jet(ext, x, y, kValue).value;
    case ExtensionOrder::dy: return compute_jet(ext, x, y, kDy).dy;
    case ExtensionOrder::dyy: return compute_jet(ext, x, y, kDyy).dyy;
    case ExtensionOrder::dx: return compute_jet(ext, x, y, kDx).dx;
  }
  throw DomainError("extend: unknown order");
}

double bloch_norm(const HarmonicExtension& ext, const std::vector<HalfspacePoint>& samples) {
  if (samples.empty()) throw DomainError("bloch_norm: empty sample set");
  const auto vals = parallel_map<double>(samples.size(), [&](std::size_t i) {
    const auto& s = samples[i];
    const auto jet = compute_jet(ext, s.x, s.y, kDy | kDx);
    return s.y * (rect_norm(jet.dx) + jet.dy.norm());
  });
  return *std::max_element(vals.begin(), vals.end());
}

double higher_order_blowup_probe(const HarmonicExtension& ext, int k,
                                 const std::vector<HalfspacePoint>& samples) {
  if (k != 1 && k != 2) throw DomainError("higher_order_blowup_probe: k must be 1 or 2");
  if (samples.empty()) throw DomainError("higher_order_blowup_probe: empty sample set");
  const auto vals = parallel_map<double>(samples.size(), [&](std::size_t i) {
    const auto& s = samples[i];
    if (k == 1) {
      const auto jet = compute_jet(ext, s.x, s.y, kDy | kDx);
      return s.y * std::max(jet.dx.cwiseAbs().maxCoeff(), jet.dy.cwiseAbs().maxCoeff());
    }
    const auto jet = compute_jet(ext, s.x, s.y, kDyy | kDxx | kDxdy);
    double m = std::max(jet.dyy.cwiseAbs().maxCoeff(), jet.dxdy.cwiseAbs().maxCoeff());
    for (const auto& h : jet.dxx) m = std::max(m, h.cwiseAbs().maxCoeff());
    return s.y * s.y * m;
  });
  return *std::max_element(vals.begin(), vals.end());
}

void BallFamily::validate(int dim) const {
  if (centers.empty() || centers.size() != radii.size())
    throw DomainError("BallFamily: needs matching, nonempty centers and radii");
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (centers[i].size() != dim) throw DomainError("BallFamily: center has wrong dimension");
    if (!(radii[i] > 0.0)) throw DomainError("BallFamily: radii must be positive");
  }
}

SupWitness bmo_norm(const ScalarField& g, const BallFamily& balls, const BallQuadrature& quad) {
  balls.validate(g.dim());
  const auto vals = parallel_map<double>(balls.centers.size(), [&](std::size_t b) {
    const auto nodes = ball_nodes(balls.centers[b], balls.radii[b], quad, g.jumps());
    std::vector<double> gv(nodes.points.size());
    double vol = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < gv.size(); ++i) {
      gv[i] = g(nodes.points[i]);
      vol += nodes.weights[i];
      mean += nodes.weights[i] * gv[i];
    }
    mean /= vol;
    double osc = 0.0;
    for (std::size_t i = 0; i < gv.size(); ++i) osc += nodes.weights[i] * std::abs(gv[i] - mean);
    return osc / vol;
  });
  SupWitness w;
  w.value = -1.0;
  for (std::size_t b = 0; b < vals.size(); ++b) {
    if (vals[b] > w.value) w = {vals[b], balls.centers[b], balls.radii[b]};
  }
  return w;
}

SupWitness carleson_quantity(const HarmonicExtension& ext, const BallFamily& balls,
                             const BallQuadrature& quad) {
  balls.validate(ext.dim());
  const auto gl = gauss_legendre(quad.gauss_order);
  SupWitness best;
  best.value = -1.0;
  for (std::size_t b = 0; b < balls.centers.size(); ++b) {
    const double delta = balls.radii[b];
    const auto xs = ball_nodes(balls.centers[b], delta, quad, ext.jumps());
    std::vector<double> yn, yw;
    graded_interval(0.0, delta, true, false, quad.radial_panels, quad.grading_levels, gl, yn, yw);
    const auto rows = parallel_map<double>(xs.points.size(), [&](std::size_t i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < yn.size(); ++j) {
        const auto jet = compute_jet(ext, xs.points[i], yn[j], kDy | kDx);
        acc += yw[j] * yn[j] * (jet.dx.squaredNorm() + jet.dy.squaredNorm());
      }
      return xs.weights[i] * acc;
    });
    double vol = 0.0, total = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      vol += xs.weights[i];
      total += rows[i];
    }
    const double q = total / vol;
    if (q > best.value) best = {q, balls.centers[b], delta};
  }
  return best;
}

Reconstruction reconstruct_boundary(const HarmonicExtension& ext, const Vec& x, double y_top,
                                    int level) {
  require_height(y_top, "reconstruct_boundary");
  if (level < 1) throw DomainError("reconstruct_boundary: level must be positive");
  const double h = y_top / level;
  const auto terms = parallel_map<Vec>(static_cast<std::size_t>(level), [&](std::size_t i) {
    const double t = (i + 0.5) * h;
    return Vec((h * t) * compute_jet(ext, x, t, kDyy).dyy);
  });
  Vec integral = Vec::Zero(ext.components());
  for (const auto& t : terms) integral += t;
  const auto top = compute_jet(ext, x, y_top, kValue | kDy);
  Reconstruction r;
  r.rhs = integral - y_top * top.dy + top.value;
  r.direct = ext.boundary(x);
  r.residual = (r.rhs - r.direct).norm();
  const double scale = r.direct.norm();
  r.relative = scale > 0.0 ? r.residual / scale : r.residual;
  return r;
}

double poisson_mass(int n, double y, double truncation, const QuadratureRule& quad) {
  require_height(y, "poisson_mass");
  if (!(truncation > 0.0)) throw DomainError("poisson_mass: truncation must be positive");
  ScalarField one("one", n, [truncation](const Vec& x) { return x.norm() < truncation ? 1.0 : 0.0; },
                  truncation);
  HarmonicExtension ext(one, quad);
  return extend(ext, Vec::Zero(n), y, ExtensionOrder::value)(0, 0);
}

KernelBoundCheck kernel_bound_check(int n, int nodes, std::uint64_t seed) {
  KernelBoundCheck out;
  out.n = n;
  out.nodes = nodes;
  const auto zs = random_points(n, nodes, 5.0, seed);
  const auto ys = random_points(1, nodes, 1.0, seed ^ 0x9e3779b97f4a7c15ULL);
  for (int i = 0; i < nodes; ++i) {
    const double y = 0.01 + 2.5 * (ys[i][0] + 1.0);
    const double p = poisson_kernel_value(n, zs[i], y);
    out.max_dy_ratio = std::max(out.max_dy_ratio, std::abs(kernel_dy(n, zs[i], y)) / (n * p / y));
    out.max_dz_ratio =
        std::max(out.max_dz_ratio, kernel_dz(n, zs[i], y).norm() / (0.5 * (n + 1) * p / y));
  }
  // Both bounds are attained (z = 0, |z| = y), so allow rounding only.
  const double tol = 1.0 + 1e-14;
  out.pass = out.max_dy_ratio <= tol && out.max_dz_ratio <= tol;
  return out;
}

}  // namespace reimann
