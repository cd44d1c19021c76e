#pragma once

#include <vector>

#include "reimann/types.hpp"

namespace reimann {

/// Largest singular value of a square matrix. Closed-form for n <= 3
/// (scalar, 2x2 discriminant formula, 3x3 trigonometric cubic on M^t M);
/// larger matrices fall back to a symmetric eigensolver.
double operator_norm(const Mat& m);

/// Euclidean inner product; for planar vectors this is Re(z * conj(w)).
inline double inner(const Vec& a, const Vec& b) { return a.dot(b); }

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int order);

}  // namespace reimann
