#include "reimann/seminorms.hpp"

#include <cmath>
#include <numbers>

#include "reimann/linalg.hpp"
#include "reimann/parallel.hpp"

namespace reimann {

std::string to_string(SeminormKind kind) {
  switch (kind) {
    case SeminormKind::qbar: return "qbar";
    case SeminormKind::r: return "r";
    case SeminormKind::r0: return "r0";
    case SeminormKind::zygmund: return "zygmund";
    case SeminormKind::lipschitz: return "lipschitz";
    case SeminormKind::growth: return "growth";
  }
  return "unknown";
}

SeminormKind parse_seminorm_kind(const std::string& name) {
  for (auto k : {SeminormKind::qbar, SeminormKind::r, SeminormKind::r0, SeminormKind::zygmund,
                 SeminormKind::lipschitz, SeminormKind::growth}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown seminorm kind '" + name + "'");
}

namespace {

nlohmann::ordered_json vec_json(const Vec& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

nlohmann::ordered_json witness_json(const std::optional<Witness>& w, SeminormKind kind) {
  if (!w) return nullptr;
  nlohmann::ordered_json j;
  j["x"] = vec_json(w->x);
  j["h"] = vec_json(w->h);
  if (w->k.size() > 0) j["k"] = vec_json(w->k);
  if (kind == SeminormKind::r) j["theta"] = w->theta;
  return j;
}

void require_nonzero(const Vec& h, const char* what) {
  if (!(h.norm() > 0.0)) throw DomainError(std::string(what) + ": offset must be nonzero");
}

void require_planar(const VectorField& v, const char* what) {
  if (v.dim() != 2) throw DomainError(std::string(what) + ": requires a planar field");
}

void require_equal_norm(const Vec& h, const Vec& k, const char* what) {
  require_nonzero(h, what);
  require_nonzero(k, what);
  const double a = h.norm();
  const double b = k.norm();
  if (std::abs(a - b) > 1e-12 * std::max(a, b))
    throw DomainError(std::string(what) + ": offsets must have equal norm");
}

Vec conj2(const Vec& h) { return vec2(h[0], -h[1]); }

// Running maximum with first-wins tie breaking.
struct Best {
  double value = -1.0;
  Witness witness;
  std::uint64_t samples = 0;

  void offer(double q, const Vec& x, const Vec& h, const Vec& k, double theta = 0.0) {
    if (q > value) {
      value = q;
      witness = Witness{x, h, k, theta};
    }
  }
  void merge(const Best& other) {
    samples += other.samples;
    if (other.value > value) {
      value = other.value;
      witness = other.witness;
    }
  }
};

Best scan_qbar(const VectorField& v, const Vec& x, const ProbeConfig& cfg,
               const std::vector<Vec>& dirs) {
  Best best;
  const Vec vx = v(x);
  const std::size_t d = dirs.size();
  std::vector<double> t(d);
  for (double r : cfg.scales) {
    // <D_h v, conj(h)> / |h|^2
    for (std::size_t a = 0; a < d; ++a) t[a] = inner(v(x + r * dirs[a]) - vx, conj2(dirs[a])) / r;
    std::size_t imax = 0, imin = 0;
    for (std::size_t a = 1; a < d; ++a) {
      if (t[a] > t[imax]) imax = a;
      if (t[a] < t[imin]) imin = a;
    }
    best.offer(t[imax] - t[imin], x, r * dirs[imax], r * dirs[imin]);
    best.samples += d * d;
  }
  return best;
}

Best scan_r(const VectorField& v, const Vec& x, const ProbeConfig& cfg,
            const std::vector<Vec>& dirs) {
  Best best;
  const Vec vx = v(x);
  const std::size_t d = dirs.size();
  const int m = cfg.theta_samples;
  std::vector<Complex> rot(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) rot[i] = std::polar(1.0, -2.0 * std::numbers::pi * i / m);
  std::vector<Complex> delta(d), unit(d);
  for (std::size_t a = 0; a < d; ++a) unit[a] = to_complex(dirs[a]);
  for (double r : cfg.scales) {
    for (std::size_t a = 0; a < d; ++a) delta[a] = to_complex(v(x + r * dirs[a]) - vx);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        // <D_h, e^{i theta} k> - <D_k, e^{i theta} h> = Re(e^{-i theta} W) |h| |k|
        const Complex w = (delta[a] * std::conj(unit[b]) - delta[b] * std::conj(unit[a])) / r;
        double q = -1.0;
        double theta = 0.0;
        if (cfg.optimal_theta) {
          q = std::abs(w);
          theta = std::arg(w);
        } else {
          for (int i = 0; i < m; ++i) {
            const double s = std::abs((rot[i] * w).real());
            if (s > q) {
              q = s;
              theta = 2.0 * std::numbers::pi * i / m;
            }
          }
        }
        best.offer(q, x, r * dirs[a], r * dirs[b], theta);
      }
    }
    best.samples += d * d * static_cast<std::uint64_t>(cfg.optimal_theta ? m + 1 : m);
  }
  return best;
}

Best scan_r0(const VectorField& v, const Vec& x, const ProbeConfig& cfg,
             const std::vector<Vec>& dirs, const std::vector<std::pair<Vec, Vec>>& frames) {
  Best best;
  const Vec vx = v(x);
  const std::size_t d = dirs.size();
  std::vector<Vec> delta(d);
  for (double r : cfg.scales) {
    for (std::size_t a = 0; a < d; ++a) delta[a] = v(x + r * dirs[a]) - vx;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        const double q = std::abs(inner(delta[a], dirs[b]) - inner(delta[b], dirs[a])) / r;
        best.offer(q, x, r * dirs[a], r * dirs[b]);
      }
    }
    best.samples += d * d;
    for (const auto& [h, k] : frames) {
      const double q = std::abs(inner(v(x + r * h) - vx, k) - inner(v(x + r * k) - vx, h)) / r;
      best.offer(q, x, r * h, r * k);
    }
    best.samples += frames.size();
  }
  return best;
}

Best scan_one_offset(const VectorField& v, const Vec& x, const ProbeConfig& cfg,
                     const std::vector<Vec>& dirs, bool zygmund) {
  Best best;
  const Vec vx = v(x);
  const Vec empty;
  for (double r : cfg.scales) {
    for (const auto& a : dirs) {
      const Vec h = r * a;
      const double q = zygmund ? (v(x + h) + v(x - h) - 2.0 * vx).norm() / r : (v(x + h) - vx).norm() / r;
      best.offer(q, x, h, empty);
    }
    best.samples += dirs.size();
  }
  return best;
}

}  // namespace

nlohmann::ordered_json SeminormEstimate::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = to_string(kind);
  j["value"] = value;
  j["witness"] = witness_json(witness, kind);
  j["samples"] = samples;
  j["is_lower_bound"] = is_lower_bound;
  j["probe_hash"] = probe_hash;
  return j;
}

double qbar_quotient(const VectorField& v, const Vec& x, const Vec& h, const Vec& k) {
  require_planar(v, "qbar_quotient");
  require_equal_norm(h, k, "qbar_quotient");
  const Vec vx = v(x);
  return std::abs(inner(v(x + h) - vx, conj2(h)) / h.squaredNorm() -
                  inner(v(x + k) - vx, conj2(k)) / k.squaredNorm());
}

double r_quotient(const VectorField& v, const Vec& x, const Vec& h, const Vec& k, double theta) {
  require_planar(v, "r_quotient");
  require_equal_norm(h, k, "r_quotient");
  const Complex e = std::polar(1.0, theta);
  const Vec vx = v(x);
  const Vec ek = to_vec(e * to_complex(k));
  const Vec eh = to_vec(e * to_complex(h));
  return std::abs(inner(v(x + h) - vx, ek) - inner(v(x + k) - vx, eh)) / (h.norm() * k.norm());
}

double r0_quotient(const VectorField& v, const Vec& x, const Vec& h, const Vec& k) {
  require_nonzero(h, "r0_quotient");
  require_nonzero(k, "r0_quotient");
  const Vec vx = v(x);
  return std::abs(inner(v(x + h) - vx, k) - inner(v(x + k) - vx, h)) / (h.norm() * k.norm());
}

double zygmund_quotient(const VectorField& v, const Vec& x, const Vec& h) {
  require_nonzero(h, "zygmund_quotient");
  return (v(x + h) + v(x - h) - 2.0 * v(x)).norm() / h.norm();
}

double lipschitz_quotient(const VectorField& v, const Vec& x, const Vec& h) {
  require_nonzero(h, "lipschitz_quotient");
  return (v(x + h) - v(x)).norm() / h.norm();
}

double growth_quotient(const VectorField& v, const Vec& x) {
  const double vn = v(x).norm();
  const double rho = x.norm();
  if (rho == 0.0) return vn;
  return vn / (rho * std::log(std::numbers::e + rho));
}

SeminormEstimate estimate_seminorm(const VectorField& v, SeminormKind kind, const ProbeConfig& cfg) {
  cfg.validate(v.dim());
  if ((kind == SeminormKind::qbar || kind == SeminormKind::r) && v.dim() != 2)
    throw DomainError("estimate_seminorm: " + to_string(kind) + " requires a planar field");
  const bool two_offset =
      kind == SeminormKind::qbar || kind == SeminormKind::r || kind == SeminormKind::r0;
  if (two_offset && cfg.pair_mode != PairMode::equal_norm)
    throw ConfigError("estimate_seminorm: two-offset quotients need pair_mode equal_norm");

  const auto dirs = direction_set(v.dim(), cfg.directions);
  const auto frames = v.dim() == 3 ? frame_pairs(cfg.frames) : std::vector<std::pair<Vec, Vec>>{};
  const auto per_point = parallel_map<Best>(cfg.base_points.size(), [&](std::size_t i) {
    const Vec& x = cfg.base_points[i];
    switch (kind) {
      case SeminormKind::qbar: return scan_qbar(v, x, cfg, dirs);
      case SeminormKind::r: return scan_r(v, x, cfg, dirs);
      case SeminormKind::r0: return scan_r0(v, x, cfg, dirs, frames);
      case SeminormKind::zygmund: return scan_one_offset(v, x, cfg, dirs, true);
      case SeminormKind::lipschitz: return scan_one_offset(v, x, cfg, dirs, false);
      case SeminormKind::growth: {
        Best b;
        b.offer(growth_quotient(v, x), x, Vec(), Vec());
        b.samples = 1;
        return b;
      }
    }
    return Best{};
  });

  Best total;
  for (const auto& b : per_point) total.merge(b);
  if (total.samples == 0) throw ConfigError("estimate_seminorm: empty probe set");
  SeminormEstimate est;
  est.kind = kind;
  est.value = std::max(total.value, 0.0);
  est.witness = total.witness;
  est.samples = total.samples;
  est.probe_hash = cfg.hash();
  return est;
}

nlohmann::ordered_json LogExtendedReport::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = to_string(kind);
  j["A"] = a;
  j["B"] = b;
  j["norm"] = norm;
  j["applicable"] = applicable;
  j["max_ratio"] = max_ratio;
  j["max_log_ratio"] = max_log_ratio;
  j["witness"] = witness_json(witness, kind);
  j["samples"] = samples;
  return j;
}

LogExtendedReport log_extended_check(const VectorField& v, SeminormKind kind, const ProbeConfig& cfg,
                                     double norm) {
  cfg.validate(v.dim());
  if (kind != SeminormKind::r0 && kind != SeminormKind::qbar)
    throw ConfigError("log_extended_check: kind must be r0 or qbar");
  if (kind == SeminormKind::qbar && v.dim() != 2)
    throw DomainError("log_extended_check: qbar requires a planar field");
  if (cfg.pair_mode != PairMode::free) throw ConfigError("log_extended_check: needs pair_mode free");
  if (cfg.scales.size() < 2) throw ConfigError("log_extended_check: needs at least two scales");

  LogExtendedReport rep;
  rep.kind = kind;
  if (kind == SeminormKind::r0) {
    rep.a = 2.5;
    rep.b = 1.0 / (2.0 * std::numbers::ln2);
  } else {
    rep.a = 1.0;
    rep.b = 1.0;
  }
  rep.norm = norm;
  rep.applicable = norm > 0.0;
  if (!rep.applicable) return rep;

  const auto dirs = direction_set(v.dim(), cfg.directions);
  const std::size_t d = dirs.size();
  const std::size_t s = cfg.scales.size();
  const auto per_point = parallel_map<Best>(cfg.base_points.size(), [&](std::size_t i) {
    Best best;
    const Vec& x = cfg.base_points[i];
    const Vec vx = v(x);
    std::vector<Vec> delta(s * d);
    for (std::size_t si = 0; si < s; ++si)
      for (std::size_t a = 0; a < d; ++a) delta[si * d + a] = v(x + cfg.scales[si] * dirs[a]) - vx;
    for (std::size_t sa = 0; sa < s; ++sa) {
      for (std::size_t sb = 0; sb < s; ++sb) {
        if (sa == sb) continue;
        const double ra = cfg.scales[sa];
        const double rb = cfg.scales[sb];
        const double bound = norm * (rep.a + rep.b * std::abs(std::log(ra / rb)));
        for (std::size_t a = 0; a < d; ++a) {
          for (std::size_t b = 0; b < d; ++b) {
            const Vec& dh = delta[sa * d + a];
            const Vec& dk = delta[sb * d + b];
            double q;
            if (kind == SeminormKind::r0) {
              q = std::abs(rb * inner(dh, dirs[b]) - ra * inner(dk, dirs[a])) / (ra * rb);
            } else {
              q = std::abs(inner(dh, conj2(dirs[a])) / ra - inner(dk, conj2(dirs[b])) / rb);
            }
            best.offer(q / bound, x, ra * dirs[a], rb * dirs[b]);
          }
        }
        best.samples += d * d;
      }
    }
    return best;
  });

  Best total;
  for (const auto& b : per_point) total.merge(b);
  rep.max_ratio = std::max(total.value, 0.0);
  rep.witness = total.witness;
  rep.samples = total.samples;
  if (rep.witness) rep.max_log_ratio = std::abs(std::log(rep.witness->h.norm() / rep.witness->k.norm()));
  return rep;
}

}  // namespace reimann
