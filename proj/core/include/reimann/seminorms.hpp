#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "reimann/fields.hpp"
#include "reimann/probes.hpp"

namespace reimann {

enum class SeminormKind { qbar, r, r0, zygmund, lipschitz, growth };

std::string to_string(SeminormKind kind);
/// Parses "qbar", "r", "r0", "zygmund", "lipschitz", "growth". Throws ConfigError.
SeminormKind parse_seminorm_kind(const std::string& name);

/// Probe attaining the sampled maximum. `k` is empty for one-offset quotients,
/// `theta` is only meaningful for kind r.
struct Witness {
  Vec x;
  Vec h;
  Vec k;
  double theta = 0.0;
};

/// Sampled supremum of a difference quotient. Always a lower bound for the
/// true seminorm.
struct SeminormEstimate {
  SeminormKind kind = SeminormKind::qbar;
  double value = 0.0;
  std::optional<Witness> witness;
  std::uint64_t samples = 0;
  bool is_lower_bound = true;
  std::string probe_hash;

  nlohmann::ordered_json to_json() const;
};

// Single-probe quotients. Offsets must be nonzero; the two-offset planar
// quotients also require |h| = |k| to 1e-12 relative.
double qbar_quotient(const VectorField& v, const Vec& x, const Vec& h, const Vec& k);
double r_quotient(const VectorField& v, const Vec& x, const Vec& h, const Vec& k, double theta);
/// |<D_h v, k> - <D_k v, h>| / (|h| |k|); any dimension, any norms.
double r0_quotient(const VectorField& v, const Vec& x, const Vec& h, const Vec& k);
double zygmund_quotient(const VectorField& v, const Vec& x, const Vec& h);
double lipschitz_quotient(const VectorField& v, const Vec& x, const Vec& h);
/// |v(x)| / (|x| log(e + |x|)); at x = 0 returns 0 if v(0) = 0 and |v(0)| otherwise.
double growth_quotient(const VectorField& v, const Vec& x);

/// Maximizes the quotient of `kind` over the probe set of `cfg`. Deterministic
/// for a fixed cfg regardless of the worker count.
SeminormEstimate estimate_seminorm(const VectorField& v, SeminormKind kind, const ProbeConfig& cfg);

/// Outcome of the unequal-norm check
///   quotient(h, k) <= norm * (A + B |log(|h|/|k|)|).
struct LogExtendedReport {
  SeminormKind kind = SeminormKind::r0;
  double a = 0.0;
  double b = 0.0;
  double norm = 0.0;
  bool applicable = false;
  double max_ratio = 0.0;
  double max_log_ratio = 0.0;
  std::optional<Witness> witness;
  std::uint64_t samples = 0;

  bool consistent(double tolerance) const { return !applicable || max_ratio <= 1.0 + tolerance; }
  nlohmann::ordered_json to_json() const;
};

/// Sweeps pairs h = r_a alpha, k = r_b beta with r_a != r_b over the scale
/// ladder. kind r0 uses (A, B) = (5/2, 1/(2 log 2)); kind qbar uses (1, 1) and
/// is informational. `norm` is the equal-norm estimate used for normalization;
/// a zero norm marks the report not applicable.
LogExtendedReport log_extended_check(const VectorField& v, SeminormKind kind, const ProbeConfig& cfg,
                                     double norm);

}  // namespace reimann
