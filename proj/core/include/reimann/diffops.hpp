#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "reimann/fields.hpp"

namespace reimann {

/// Jacobian J(i, j) = d v_i / d x_j and everything derived from it.
struct DerivativeBundle {
  Mat jacobian;
  double div = 0.0;
  Mat curl_matrix;  // J - J^t
  Mat S;            // (J + J^t)/2 - (div/n) Id
  Mat A;            // (J - J^t)/2 + (div/n) Id
  // Planar fields only.
  std::optional<double> curl_scalar;
  std::optional<Complex> d_complex;
  std::optional<Complex> dbar_complex;

  nlohmann::ordered_json to_json() const;
};

/// Central differences (v(x + e_j step) - v(x - e_j step)) / (2 step). A step
/// of 0 selects the closed-form Jacobian, which must then exist.
Mat jacobian_fd(const VectorField& v, const Vec& x, double step);

DerivativeBundle bundle_from_jacobian(const Mat& jacobian);
DerivativeBundle derivative_bundle(const VectorField& v, const Vec& x, double step);

enum class RecoveryKind { qbar_recovery, r_recovery, r0_recovery };

std::string to_string(RecoveryKind kind);

/// Sampled quotient suprema at a single base point, one value per scale.
std::vector<double> pointwise_limit_ladder(const VectorField& v, const Vec& x, RecoveryKind kind,
                                           const std::vector<double>& scales, int directions = 64);

/// Value of pointwise_limit_ladder at the finest scale. For smooth fields it
/// tends to 2|dv(x)| (qbar, r) or |Dv - D^t v|_op (r0) as the scale shrinks.
double pointwise_limit_estimate(const VectorField& v, const Vec& x, RecoveryKind kind,
                                const std::vector<double>& scales, int directions = 64);

struct RotationGenerators {
  int dim = 0;
  std::vector<Mat> matrices;
};

/// J_{i,j} for i < j: J e_i = -e_j, J e_j = e_i, J e_k = e_k otherwise.
RotationGenerators rotation_generators(int n);

/// max over J in gens and the identity of |M^t J - J^t M|_op.
double rn_attempt_sup(const Mat& m, const RotationGenerators& gens);

}  // namespace reimann
