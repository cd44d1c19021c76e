#include "reimann/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace reimann {

namespace {

// Largest eigenvalue of a symmetric positive semidefinite 3x3 matrix.
double largest_eigenvalue_sym3(const Eigen::Matrix3d& a) {
  const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  const double tr = a.trace();
  if (p1 == 0.0) {
    return std::max({a(0, 0), a(1, 1), a(2, 2)});
  }
  const double q = tr / 3.0;
  const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                    (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  const Eigen::Matrix3d b = (a - q * Eigen::Matrix3d::Identity()) / p;
  const double r = std::clamp(b.determinant() / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  return q + 2.0 * p * std::cos(phi);
}

}  // namespace

double operator_norm(const Mat& m) {
  if (m.rows() != m.cols()) {
    throw DomainError("operator_norm: matrix must be square");
  }
  const auto n = m.rows();
  if (n == 0) return 0.0;
  if (n == 1) return std::abs(m(0, 0));
  if (n == 2) {
    const double f2 = m.squaredNorm();
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double disc = std::max(0.0, f2 * f2 - 4.0 * det * det);
    return std::sqrt(std::max(0.0, 0.5 * (f2 + std::sqrt(disc))));
  }
  if (n == 3) {
    const Eigen::Matrix3d mm = m;
    const Eigen::Matrix3d gram = mm.transpose() * mm;
    return std::sqrt(std::max(0.0, largest_eigenvalue_sym3(gram)));
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(m.transpose() * m, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

GaussRule gauss_legendre(int order) {
  if (order < 1) throw DomainError("gauss_legendre: order must be positive");
  GaussRule g;
  g.nodes.resize(static_cast<std::size_t>(order));
  g.weights.resize(static_cast<std::size_t>(order));
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.nodes[order - 1 - i] = x;
    g.nodes[i] = -x;
    g.weights[i] = w;
    g.weights[order - 1 - i] = w;
  }
  return g;
}

}  // namespace reimann
