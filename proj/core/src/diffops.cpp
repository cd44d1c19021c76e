#include "reimann/diffops.hpp"

#include "reimann/linalg.hpp"
#include "reimann/seminorms.hpp"

namespace reimann {

namespace {

nlohmann::ordered_json mat_json(const Mat& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) row[j] = m(i, j);
    rows.push_back(row);
  }
  return rows;
}

nlohmann::ordered_json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

nlohmann::ordered_json DerivativeBundle::to_json() const {
  nlohmann::ordered_json j;
  j["jacobian"] = mat_json(jacobian);
  j["div"] = div;
  j["curl_matrix"] = mat_json(curl_matrix);
  if (curl_scalar) j["curl_scalar"] = *curl_scalar;
  if (d_complex) j["d_complex"] = complex_json(*d_complex);
  if (dbar_complex) j["dbar_complex"] = complex_json(*dbar_complex);
  j["S"] = mat_json(S);
  j["A"] = mat_json(A);
  return j;
}

Mat jacobian_fd(const VectorField& v, const Vec& x, double step) {
  if (!(step >= 0.0)) throw DomainError("jacobian_fd: step must be nonnegative");
  if (step == 0.0) return v.jacobian(x);
  const int n = v.dim();
  if (x.size() != n) throw DomainError("jacobian_fd: point has wrong dimension");
  Mat jac(n, n);
  for (int j = 0; j < n; ++j) {
    Vec e = Vec::Zero(n);
    e[j] = step;
    jac.col(j) = (v(x + e) - v(x - e)) / (2.0 * step);
  }
  return jac;
}

DerivativeBundle bundle_from_jacobian(const Mat& jacobian) {
  if (jacobian.rows() != jacobian.cols() || jacobian.rows() < 1)
    throw DomainError("bundle_from_jacobian: matrix must be square");
  const auto n = jacobian.rows();
  DerivativeBundle b;
  b.jacobian = jacobian;
  b.div = jacobian.trace();
  b.curl_matrix = jacobian - jacobian.transpose();
  const Mat id = Mat::Identity(n, n);
  b.S = 0.5 * (jacobian + jacobian.transpose()) - (b.div / static_cast<double>(n)) * id;
  // A = J - S keeps S + A = J exact in floating point.
  b.A = jacobian - b.S;
  if (n == 2) {
    const double curl = jacobian(1, 0) - jacobian(0, 1);
    b.curl_scalar = curl;
    b.d_complex = Complex(0.5 * b.div, 0.5 * curl);
    b.dbar_complex =
        Complex(0.5 * (jacobian(0, 0) - jacobian(1, 1)), 0.5 * (jacobian(1, 0) + jacobian(0, 1)));
  }
  return b;
}

DerivativeBundle derivative_bundle(const VectorField& v, const Vec& x, double step) {
  return bundle_from_jacobian(jacobian_fd(v, x, step));
}

std::string to_string(RecoveryKind kind) {
  switch (kind) {
    case RecoveryKind::qbar_recovery: return "qbar_recovery";
    case RecoveryKind::r_recovery: return "r_recovery";
    case RecoveryKind::r0_recovery: return "r0_recovery";
  }
  return "unknown";
}

std::vector<double> pointwise_limit_ladder(const VectorField& v, const Vec& x, RecoveryKind kind,
                                           const std::vector<double>& scales, int directions) {
  if (scales.empty()) throw DomainError("pointwise_limit_estimate: empty scale ladder");
  SeminormKind sk = SeminormKind::r0;
  if (kind == RecoveryKind::qbar_recovery) sk = SeminormKind::qbar;
  if (kind == RecoveryKind::r_recovery) sk = SeminormKind::r;
  std::vector<double> out;
  out.reserve(scales.size());
  for (double r : scales) {
    ProbeConfig cfg;
    cfg.base_points = {x};
    cfg.directions = directions;
    cfg.scales = {r};
    if (v.dim() == 3) cfg.frames = directions;
    out.push_back(estimate_seminorm(v, sk, cfg).value);
  }
  return out;
}

double pointwise_limit_estimate(const VectorField& v, const Vec& x, RecoveryKind kind,
                                const std::vector<double>& scales, int directions) {
  return pointwise_limit_ladder(v, x, kind, scales, directions).back();
}

RotationGenerators rotation_generators(int n) {
  if (n < 2) throw DomainError("rotation_generators: n must be at least 2");
  RotationGenerators g;
  g.dim = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Mat m = Mat::Identity(n, n);
      m(i, i) = 0.0;
      m(j, j) = 0.0;
      m(j, i) = -1.0;
      m(i, j) = 1.0;
      g.matrices.push_back(m);
    }
  }
  return g;
}

double rn_attempt_sup(const Mat& m, const RotationGenerators& gens) {
  if (m.rows() != gens.dim || m.cols() != gens.dim)
    throw DomainError("rn_attempt_sup: matrix does not match generator dimension");
  const Mat id = Mat::Identity(gens.dim, gens.dim);
  double best = operator_norm(m.transpose() * id - id.transpose() * m);
  for (const auto& j : gens.matrices) {
    best = std::max(best, operator_norm(m.transpose() * j - j.transpose() * m));
  }
  return best;
}

}  // namespace reimann
