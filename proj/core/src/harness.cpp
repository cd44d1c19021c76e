#include "reimann/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "reimann/diffops.hpp"
#include "reimann/halfspace.hpp"
#include "reimann/linalg.hpp"

namespace reimann {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------- RunConfig

namespace {

const std::set<std::string> kConfigKeys = {
    "seed",  "points",   "directions", "scales",       "r0",       "box",   "frames", "log_directions",
    "fd_step", "slack", "t_ladder",   "kernel_nodes", "envelope", "fields"};

template <typename T>
T get_as(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

std::optional<double> optional_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_number()) throw ConfigError(std::string("config key 'envelope.") + key + "' must be a number");
  return j.at(key).get<double>();
}

ojson optional_json(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kConfigKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  RunConfig cfg;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned())
      throw ConfigError("config key 'seed' must be a nonnegative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("points")) cfg.points = get_as<int>(j, "points");
  if (j.contains("directions")) cfg.directions = get_as<int>(j, "directions");
  if (j.contains("scales")) cfg.scales = get_as<int>(j, "scales");
  if (j.contains("r0")) cfg.r0 = get_as<double>(j, "r0");
  if (j.contains("box")) cfg.box = get_as<double>(j, "box");
  if (j.contains("frames")) cfg.frames = get_as<int>(j, "frames");
  if (j.contains("log_directions")) cfg.log_directions = get_as<int>(j, "log_directions");
  if (j.contains("fd_step")) cfg.fd_step = get_as<double>(j, "fd_step");
  if (j.contains("slack")) cfg.slack = get_as<double>(j, "slack");
  if (j.contains("t_ladder")) cfg.t_ladder = get_as<std::vector<double>>(j, "t_ladder");
  if (j.contains("kernel_nodes")) cfg.kernel_nodes = get_as<int>(j, "kernel_nodes");
  if (j.contains("envelope")) {
    const auto& env = j["envelope"];
    if (!env.is_object()) throw ConfigError("config key 'envelope' must be an object");
    for (const auto& [key, value] : env.items()) {
      if (key != "lo" && key != "hi") throw ConfigError("unknown config key 'envelope." + key + "'");
    }
    cfg.envelope_lo = optional_number(env, "lo");
    cfg.envelope_hi = optional_number(env, "hi");
  }
  if (j.contains("fields") && !j["fields"].is_null()) cfg.fields = get_as<std::vector<std::string>>(j, "fields");
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return from_json(j);
}

ojson RunConfig::to_json() const {
  ojson j;
  j["seed"] = seed;
  j["points"] = points;
  j["directions"] = directions;
  j["scales"] = scales;
  j["r0"] = r0;
  j["box"] = box;
  j["frames"] = frames;
  j["log_directions"] = log_directions;
  j["fd_step"] = fd_step;
  j["slack"] = slack;
  j["t_ladder"] = t_ladder;
  j["kernel_nodes"] = kernel_nodes;
  j["envelope"] = {{"lo", optional_json(envelope_lo)}, {"hi", optional_json(envelope_hi)}};
  j["fields"] = fields ? ojson(*fields) : ojson(nullptr);
  return j;
}

void RunConfig::validate() const {
  if (points < 0) throw ConfigError("points must be nonnegative");
  if (directions < 4) throw ConfigError("directions must be at least 4");
  if (scales < 1) throw ConfigError("scales must be at least 1");
  if (!(r0 > 0.0) || !std::isfinite(r0)) throw ConfigError("r0 must be positive");
  if (!(box > 0.0) || !std::isfinite(box)) throw ConfigError("box must be positive");
  if (frames < 0) throw ConfigError("frames must be nonnegative");
  if (log_directions < 4) throw ConfigError("log_directions must be at least 4");
  if (!(fd_step >= 0.0)) throw ConfigError("fd_step must be nonnegative");
  if (!(slack >= 0.0)) throw ConfigError("slack must be nonnegative");
  if (kernel_nodes < 1) throw ConfigError("kernel_nodes must be positive");
  if (t_ladder.empty()) throw ConfigError("t_ladder must not be empty");
  for (std::size_t i = 0; i < t_ladder.size(); ++i) {
    if (!(t_ladder[i] > std::numbers::e)) throw ConfigError("t_ladder entries must exceed e");
    if (i > 0 && !(t_ladder[i] > t_ladder[i - 1])) throw ConfigError("t_ladder must be increasing");
  }
  if (envelope_lo && envelope_hi && *envelope_lo > *envelope_hi) throw ConfigError("envelope lo exceeds hi");
  if (fields) {
    for (const auto& name : *fields) {
      const auto entry = find_zoo_entry(name);
      if (!entry.is_pointwise()) throw ConfigError("field '" + name + "' is grid-only and has no pointwise probes");
    }
  }
}

ProbeConfig RunConfig::probes(int dim) const {
  auto pc = ProbeConfig::make(dim, points, directions, scales, r0, seed, box);
  if (dim == 3) pc.frames = frames;
  return pc;
}

ProbeConfig RunConfig::refined_probes(int dim) const {
  auto pc = ProbeConfig::make(dim, 2 * points, 2 * directions, scales, r0, seed, box);
  if (dim == 3) pc.frames = 2 * frames;
  return pc;
}

std::vector<ZooEntry> RunConfig::selected_fields() const {
  std::vector<ZooEntry> out;
  if (fields) {
    std::set<std::string> seen;
    for (const auto& name : *fields) {
      if (seen.insert(name).second) out.push_back(find_zoo_entry(name));
    }
  } else {
    for (int dim : {2, 3}) {
      for (auto& e : make_zoo(dim)) {
        if (e.is_pointwise()) out.push_back(std::move(e));
      }
    }
  }
  for (const auto& e : out) {
    if (!e.is_pointwise()) throw ConfigError("field '" + e.name + "' is grid-only");
  }
  std::sort(out.begin(), out.end(), [](const ZooEntry& a, const ZooEntry& b) { return a.name < b.name; });
  return out;
}

// ---------------------------------------------------------------- shared helpers

namespace {

struct PointSups {
  std::optional<double> d;  // planar only
  double a = 0.0;
  double curl = 0.0;
  double div = 0.0;
};

Mat field_jacobian(const VectorField& v, const Vec& x, double fd_step) {
  if (fd_step == 0.0 && v.has_jacobian()) return v.jacobian(x);
  return jacobian_fd(v, x, fd_step > 0.0 ? fd_step : 1e-6);
}

PointSups point_sups(const VectorField& v, const ProbeConfig& pc, double fd_step) {
  PointSups s;
  if (v.dim() == 2) s.d = 0.0;
  for (const auto& x : pc.base_points) {
    if (v.near_singularity(x)) continue;
    const auto b = bundle_from_jacobian(field_jacobian(v, x, fd_step));
    if (s.d) s.d = std::max(*s.d, std::abs(*b.d_complex));
    s.a = std::max(s.a, operator_norm(b.A));
    s.curl = std::max(s.curl, operator_norm(b.curl_matrix));
    s.div = std::max(s.div, std::abs(b.div));
  }
  return s;
}

std::optional<double> safe_ratio(std::optional<double> num, std::optional<double> den) {
  if (!num || !den) return std::nullopt;
  if (!(*den > 1e-9)) return std::nullopt;
  return *num / *den;
}

std::string ratio_csv_metric(const std::string& name) { return "ratio:" + name; }

ojson doubles_json(const std::vector<double>& v) {
  ojson a = ojson::array();
  for (double x : v) a.push_back(x);
  return a;
}

bool is_linear(const VectorField& v) {
  if (!v.has_jacobian()) return false;
  const int n = v.dim();
  if (v(Vec::Zero(n)).norm() != 0.0) return false;
  const auto pts = random_points(n, 3, 2.0, 7);
  const Mat j0 = v.jacobian(pts[0]);
  for (const auto& p : pts) {
    if ((v.jacobian(p) - j0).norm() > 1e-14 * std::max(1.0, j0.norm())) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------- report JSON

ojson Cell::to_json() const {
  ojson j;
  j["value"] = optional_json(value);
  j["probe_hash"] = probe_hash;
  return j;
}

ojson RatioCell::to_json() const {
  ojson j;
  j["name"] = name;
  j["value"] = optional_json(value);
  j["refined"] = optional_json(refined);
  j["probe_hash"] = probe_hash;
  j["refined_hash"] = refined_hash;
  j["guard_ok"] = guard_ok;
  j["in_envelope"] = in_envelope;
  return j;
}

ojson EquivalenceRow::to_json() const {
  ojson j;
  j["name"] = name;
  j["dim"] = dim;
  ojson m;
  for (const auto& [key, cell] : metrics) m[key] = cell.to_json();
  j["metrics"] = m;
  j["lipschitz_capped"] = lipschitz_capped;
  ojson r = ojson::array();
  for (const auto& c : ratios) r.push_back(c.to_json());
  j["ratios"] = r;
  auto le = log_extended.to_json();
  le["probe_hash"] = log_extended_hash;
  j["log_extended"] = le;
  return j;
}

ojson ScaleScan::to_json() const {
  ojson j;
  j["field"] = field;
  j["scales"] = doubles_json(scales);
  j["quotients"] = doubles_json(quotients);
  j["slope"] = slope;
  return j;
}

ojson EquivalenceReport::to_json() const {
  ojson j;
  j["report"] = "equivalence";
  j["config"] = config;
  ojson r = ojson::array();
  for (const auto& row : rows) r.push_back(row.to_json());
  j["rows"] = r;
  ojson c;
  for (const auto& [name, value] : empirical_constants) c[name] = value;
  j["empirical_constants"] = c.is_null() ? ojson::object() : c;
  j["flags"] = flags;
  j["lipschitz_scan"] = lipschitz_scan ? lipschitz_scan->to_json() : ojson(nullptr);
  return j;
}

std::vector<CsvRow> EquivalenceReport::csv_rows() const {
  std::vector<CsvRow> out;
  for (const auto& row : rows) {
    for (const auto& [key, cell] : row.metrics) {
      if (cell.value) out.push_back({row.name, key, *cell.value, cell.probe_hash});
    }
    for (const auto& r : row.ratios) {
      if (r.value) out.push_back({row.name, ratio_csv_metric(r.name), *r.value, r.probe_hash});
      if (r.refined) out.push_back({row.name, ratio_csv_metric(r.name) + ":refined", *r.refined, r.refined_hash});
    }
    if (row.log_extended.applicable)
      out.push_back({row.name, "log_extended_max_ratio", row.log_extended.max_ratio, row.log_extended_hash});
  }
  return out;
}

ojson InequalityCheck::to_json() const {
  ojson j;
  j["field"] = field;
  j["name"] = name;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["constant"] = constant;
  j["slack"] = slack;
  j["lhs_hash"] = lhs_hash;
  j["rhs_hash"] = rhs_hash;
  j["pass"] = pass;
  j["witness"] = witness;
  return j;
}

bool InequalityReport::all_pass() const { return first_failure() == nullptr; }

const InequalityCheck* InequalityReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.pass) return &c;
  }
  return nullptr;
}

ojson InequalityReport::to_json() const {
  ojson j;
  j["report"] = "inequalities";
  j["config"] = config;
  ojson c = ojson::array();
  for (const auto& check : checks) c.push_back(check.to_json());
  j["checks"] = c;
  j["all_pass"] = all_pass();
  return j;
}

std::vector<CsvRow> InequalityReport::csv_rows() const {
  std::vector<CsvRow> out;
  for (const auto& c : checks) {
    out.push_back({c.field, c.name + ":lhs", c.lhs, c.lhs_hash});
    out.push_back({c.field, c.name + ":rhs", c.rhs, c.rhs_hash});
  }
  return out;
}

ojson CutoffRow::to_json() const {
  ojson j;
  j["field"] = field;
  j["kind"] = to_string(kind);
  j["t"] = doubles_json(t);
  j["base"] = doubles_json(base);
  j["cut"] = doubles_json(cut);
  j["excess"] = doubles_json(excess);
  j["probe_hashes"] = probe_hashes;
  j["slope"] = optional_json(slope);
  j["c"] = c;
  j["linear"] = linear;
  j["pass"] = pass;
  return j;
}

bool CutoffReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const CutoffRow& r) { return r.pass; });
}

ojson CutoffReport::to_json() const {
  ojson j;
  j["report"] = "cutoff";
  j["config"] = config;
  ojson r = ojson::array();
  for (const auto& row : rows) r.push_back(row.to_json());
  j["rows"] = r;
  j["all_pass"] = all_pass();
  return j;
}

std::vector<CsvRow> CutoffReport::csv_rows() const {
  std::vector<CsvRow> out;
  for (const auto& row : rows) {
    const std::string kind = to_string(row.kind);
    for (std::size_t i = 0; i < row.t.size(); ++i) {
      out.push_back({row.field, kind + ":excess:t=" + format_double(row.t[i]), row.excess[i], row.probe_hashes[i]});
    }
    out.push_back({row.field, kind + ":c", row.c, row.probe_hashes.empty() ? "" : row.probe_hashes.back()});
  }
  return out;
}

// ---------------------------------------------------------------- equivalence

namespace {

struct Estimates {
  std::optional<double> qbar, r, r0;
  PointSups sups;
  std::string hash;
};

Estimates ratio_inputs(const VectorField& v, const ProbeConfig& pc, double fd_step) {
  Estimates e;
  e.hash = pc.hash();
  if (v.dim() == 2) {
    e.qbar = estimate_seminorm(v, SeminormKind::qbar, pc).value;
    e.r = estimate_seminorm(v, SeminormKind::r, pc).value;
  }
  e.r0 = estimate_seminorm(v, SeminormKind::r0, pc).value;
  e.sups = point_sups(v, pc, fd_step);
  return e;
}

struct RatioSpec {
  std::string name;
  std::optional<double> (*fn)(const Estimates&);
};

const std::vector<RatioSpec>& ratio_specs() {
  static const std::vector<RatioSpec> specs = {
      {"qbar/sup_d", [](const Estimates& e) { return safe_ratio(e.qbar, e.sups.d); }},
      {"r/sup_d", [](const Estimates& e) { return safe_ratio(e.r, e.sups.d); }},
      {"qbar/r", [](const Estimates& e) { return safe_ratio(e.qbar, e.r); }},
      {"sup_A/(sup_div+r0)",
       [](const Estimates& e) {
         return e.r0 ? safe_ratio(e.sups.a, e.sups.div + *e.r0) : std::optional<double>();
       }},
      {"r0/sup_A", [](const Estimates& e) { return safe_ratio(e.r0, e.sups.a); }},
      {"sup_curl/r0", [](const Estimates& e) { return safe_ratio(e.sups.curl, e.r0); }},
  };
  return specs;
}

ScaleScan lipschitz_scan(const VectorField& v, const RunConfig& cfg) {
  ScaleScan scan;
  scan.field = v.name();
  const int levels = std::max(cfg.scales, 4);
  const auto dirs = direction_set(v.dim(), cfg.directions);
  const Vec origin = Vec::Zero(v.dim());
  std::vector<double> x, y;
  for (int j = 0; j <= levels; ++j) {
    const double r = std::ldexp(cfg.r0, -j);
    double best = 0.0;
    for (const auto& a : dirs) best = std::max(best, lipschitz_quotient(v, origin, r * a));
    scan.scales.push_back(r);
    scan.quotients.push_back(best);
    x.push_back(std::log(1.0 / r));
    y.push_back(best);
  }
  scan.slope = fit_line(x, y).first;
  return scan;
}

EquivalenceRow equivalence_row(const ZooEntry& entry, const RunConfig& cfg) {
  const VectorField& v = *entry.field;
  const int dim = v.dim();
  EquivalenceRow row;
  row.name = entry.name;
  row.dim = dim;

  const auto pc = cfg.probes(dim);
  const auto hash = pc.hash();
  const auto base = ratio_inputs(v, pc, cfg.fd_step);
  const auto fine = ratio_inputs(v, cfg.refined_probes(dim), cfg.fd_step);

  auto add = [&](const std::string& key, std::optional<double> value, const std::string& h) {
    row.metrics.push_back({key, Cell{value, h}});
  };
  if (dim == 2) {
    add("qbar", base.qbar, hash);
    add("r", base.r, hash);
  }
  add("r0", base.r0, hash);
  add("zygmund", estimate_seminorm(v, SeminormKind::zygmund, pc).value, hash);
  const double lip = estimate_seminorm(v, SeminormKind::lipschitz, pc).value;
  add("lipschitz", lip, hash);
  add("growth", estimate_seminorm(v, SeminormKind::growth, pc).value, hash);
  if (dim == 2) add("sup_d", base.sups.d, hash);
  add("sup_A", base.sups.a, hash);
  add("sup_curl", base.sups.curl, hash);
  add("sup_div", base.sups.div, hash);

  // Lipschitz quotients that keep growing on a finer ladder are reported as
  // capped (the sampled value is only a floor of an unbounded quantity).
  auto deeper = pc;
  for (int extra = 1; extra <= 2; ++extra) deeper.scales.push_back(std::ldexp(cfg.r0, -(cfg.scales + extra)));
  const double lip_deep = estimate_seminorm(v, SeminormKind::lipschitz, deeper).value;
  row.lipschitz_capped = lip_deep > lip * (1.0 + cfg.slack) + 1e-12;

  for (const auto& spec : ratio_specs()) {
    const auto value = spec.fn(base);
    const auto refined = spec.fn(fine);
    if (!value && !refined) continue;
    RatioCell cell;
    cell.name = spec.name;
    cell.value = value;
    cell.refined = refined;
    cell.probe_hash = base.hash;
    cell.refined_hash = fine.hash;
    if (value && refined) cell.guard_ok = *refined <= *value * (1.0 + cfg.slack) + 1e-9;
    if (value) {
      if (cfg.envelope_lo && *value < *cfg.envelope_lo) cell.in_envelope = false;
      if (cfg.envelope_hi && *value > *cfg.envelope_hi) cell.in_envelope = false;
    }
    row.ratios.push_back(cell);
  }

  auto free_pc = pc;
  free_pc.pair_mode = PairMode::free;
  free_pc.directions = cfg.log_directions;
  if (dim == 3) free_pc.frames = 0;
  row.log_extended = log_extended_check(v, SeminormKind::r0, free_pc, base.r0.value_or(0.0));
  row.log_extended_hash = free_pc.hash();
  return row;
}

}  // namespace

EquivalenceReport run_equivalence_suite(const RunConfig& cfg) {
  cfg.validate();
  EquivalenceReport report;
  report.config = cfg.to_json();
  const auto fields = cfg.selected_fields();
  for (const auto& entry : fields) report.rows.push_back(equivalence_row(entry, cfg));

  for (const auto& spec : ratio_specs()) {
    std::optional<double> worst;
    for (const auto& row : report.rows) {
      for (const auto& cell : row.ratios) {
        if (cell.name != spec.name) continue;
        for (const auto& v : {cell.value, cell.refined}) {
          if (v) worst = std::max(worst.value_or(*v), *v);
        }
      }
    }
    if (worst) report.empirical_constants.push_back({spec.name, *worst});
  }
  for (const auto& row : report.rows) {
    for (const auto& cell : row.ratios) {
      if (!cell.guard_ok) report.flags.push_back(row.name + ": " + cell.name + " grows under probe refinement");
      if (!cell.in_envelope) report.flags.push_back(row.name + ": " + cell.name + " outside envelope");
    }
    if (row.log_extended.applicable && !row.log_extended.consistent(cfg.slack))
      report.flags.push_back(row.name + ": log-extended R0 bound exceeded");
  }
  for (const auto& entry : fields) {
    if (entry.name == "conjlog") report.lipschitz_scan = lipschitz_scan(*entry.field, cfg);
  }
  return report;
}

// ---------------------------------------------------------------- inequalities

namespace {

InequalityCheck make_check(std::string field, std::string name, const SeminormEstimate* lhs_est, double lhs,
                           const std::string& lhs_hash, double constant, double norm, const std::string& rhs_hash,
                           double slack) {
  if (lhs_hash != rhs_hash) throw Error("inequality '" + name + "': sides computed from different probes");
  InequalityCheck c;
  c.field = std::move(field);
  c.name = std::move(name);
  c.lhs = lhs;
  c.constant = constant;
  c.rhs = constant * norm;
  c.slack = slack;
  c.lhs_hash = lhs_hash;
  c.rhs_hash = rhs_hash;
  c.pass = c.lhs <= c.rhs * (1.0 + slack) + 1e-12;
  if (lhs_est) c.witness = lhs_est->to_json()["witness"];
  return c;
}

}  // namespace

InequalityReport run_inequality_suite(const RunConfig& cfg) {
  cfg.validate();
  InequalityReport report;
  report.config = cfg.to_json();
  for (const auto& entry : cfg.selected_fields()) {
    const VectorField& v = *entry.field;
    const auto pc = cfg.probes(v.dim());
    const auto zyg = estimate_seminorm(v, SeminormKind::zygmund, pc);
    const auto r0 = estimate_seminorm(v, SeminormKind::r0, pc);
    report.checks.push_back(make_check(entry.name, "zygmund<=4*r0", &zyg, zyg.value, zyg.probe_hash, 4.0, r0.value,
                                       r0.probe_hash, cfg.slack));
    if (v.dim() == 2) {
      const auto qbar = estimate_seminorm(v, SeminormKind::qbar, pc);
      const auto r = estimate_seminorm(v, SeminormKind::r, pc);
      const auto sups = point_sups(v, pc, cfg.fd_step);
      const auto hash = pc.hash();
      report.checks.push_back(
          make_check(entry.name, "sup_d<=qbar/2", nullptr, *sups.d, hash, 0.5, qbar.value, qbar.probe_hash, cfg.slack));
      report.checks.push_back(
          make_check(entry.name, "sup_d<=r/2", nullptr, *sups.d, hash, 0.5, r.value, r.probe_hash, cfg.slack));
    }
  }
  for (int n = 1; n <= 3; ++n) {
    const auto k = kernel_bound_check(n, cfg.kernel_nodes, cfg.seed);
    const std::string field = "poisson_n" + std::to_string(n);
    const std::string hash = hex64(fnv1a64("kernel:" + std::to_string(n) + ":" + std::to_string(cfg.kernel_nodes) +
                                           ":" + std::to_string(cfg.seed)));
    for (const auto& [name, ratio] : {std::pair<std::string, double>{"|d_y P|<=n*P/y", k.max_dy_ratio},
                                      std::pair<std::string, double>{"|D_z P|<=(n+1)/2*P/y", k.max_dz_ratio}}) {
      InequalityCheck c;
      c.field = field;
      c.name = name;
      c.lhs = ratio;
      c.rhs = 1.0;
      c.constant = name.rfind("|d_y", 0) == 0 ? n : 0.5 * (n + 1);
      c.slack = 0.0;
      c.lhs_hash = hash;
      c.rhs_hash = hash;
      c.pass = k.pass;
      c.witness = nullptr;
      report.checks.push_back(c);
    }
  }
  return report;
}

// ---------------------------------------------------------------- cutoff

namespace {

std::vector<Vec> annulus_points(int dim, int count, double t, std::uint64_t seed) {
  const auto dirs = random_points(dim, count, 1.0, seed);
  const auto radial = random_points(1, count, 1.0, seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Vec> out;
  for (int i = 0; i < count; ++i) {
    const double norm = dirs[i].norm();
    if (norm < 1e-3) continue;
    out.push_back(dirs[i] / norm * (t * (1.5 + 0.5 * radial[i][0])));
  }
  return out;
}

}  // namespace

CutoffReport run_cutoff_stability(const RunConfig& cfg) {
  cfg.validate();
  CutoffReport report;
  report.config = cfg.to_json();
  for (const auto& entry : cfg.selected_fields()) {
    const VectorField& v = *entry.field;
    const int dim = v.dim();
    std::vector<SeminormKind> kinds;
    if (dim == 2) kinds.push_back(SeminormKind::qbar);
    kinds.push_back(SeminormKind::r0);
    for (const auto kind : kinds) {
      CutoffRow row;
      row.field = entry.name;
      row.kind = kind;
      row.linear = is_linear(v);
      for (double t : cfg.t_ladder) {
        auto pc = cfg.probes(dim);
        pc.base_points = annulus_points(dim, std::max(cfg.points, 1) * 2, t, cfg.seed);
        if (pc.base_points.empty()) throw ConfigError("cutoff: no annulus probes");
        pc.box = 2.0 * t;
        double reach = 0.0;
        for (const auto& p : pc.base_points) reach = std::max(reach, p.norm());
        reach += 2.0 * pc.scales.front();
        if (std::log(reach) >= cutoff_log_outer_radius(t))
          throw ConfigError("cutoff: probes extend beyond the support of g_t");
        const auto cut_field = apply_cutoff(v, t);
        const double base = estimate_seminorm(v, kind, pc).value;
        const double cut = estimate_seminorm(cut_field, kind, pc).value;
        row.t.push_back(t);
        row.base.push_back(base);
        row.cut.push_back(cut);
        row.excess.push_back(cut - base);
        row.probe_hashes.push_back(pc.hash());
        row.c = std::max(row.c, t * std::abs(cut - base));
      }
      std::vector<double> lx, ly;
      for (std::size_t i = 0; i < row.t.size(); ++i) {
        if (std::abs(row.excess[i]) > 1e-13) {
          lx.push_back(std::log(row.t[i]));
          ly.push_back(std::log(std::abs(row.excess[i])));
        }
      }
      if (lx.size() >= 2 && lx.size() == row.t.size()) row.slope = fit_line(lx, ly).first;
      if (row.linear) {
        row.pass = lx.empty() || (row.slope && *row.slope <= -0.8);
      } else {
        row.pass = std::isfinite(row.c);
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

// ---------------------------------------------------------------- emission

namespace {

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

}  // namespace

void emit(const EquivalenceReport& report, const std::string& dir, EmitFormat format) {
  switch (format) {
    case EmitFormat::json:
      write_json(join(dir, "equivalence.json"), report.to_json());
      break;
    case EmitFormat::csv:
      write_text(join(dir, "equivalence.csv"), csv_text(report.csv_rows()));
      break;
    case EmitFormat::svg: {
      std::vector<Series> series;
      for (const auto& row : report.rows) {
        for (const auto& cell : row.ratios) {
          if (cell.name != (row.dim == 2 ? "qbar/sup_d" : "r0/sup_A")) continue;
          Series s{row.name + " " + cell.name, {}};
          if (cell.value) s.points.push_back({0.0, *cell.value});
          if (cell.refined) s.points.push_back({1.0, *cell.refined});
          if (!s.points.empty()) series.push_back(std::move(s));
        }
      }
      write_text(join(dir, "ratios.svg"),
                 svg_line_chart("Ratio against probe refinement", "refinement step", "ratio", series));
      if (report.lipschitz_scan) {
        const auto& scan = *report.lipschitz_scan;
        Series s{scan.field + " Lipschitz quotient at 0", {}};
        for (std::size_t i = 0; i < scan.scales.size(); ++i)
          s.points.push_back({std::log(1.0 / scan.scales[i]), scan.quotients[i]});
        std::ostringstream note;
        note.precision(6);
        note << "fitted slope " << scan.slope;
        write_text(join(dir, scan.field + "_lipschitz.svg"),
                   svg_line_chart("Lipschitz quotient against scale", "log(1/r)", "quotient", {s}, note.str()));
      }
      break;
    }
  }
}

void emit(const InequalityReport& report, const std::string& dir, EmitFormat format) {
  switch (format) {
    case EmitFormat::json:
      write_json(join(dir, "inequalities.json"), report.to_json());
      break;
    case EmitFormat::csv:
      write_text(join(dir, "inequalities.csv"), csv_text(report.csv_rows()));
      break;
    case EmitFormat::svg: {
      std::vector<Series> series;
      Series s{"lhs / (constant * norm)", {}};
      for (std::size_t i = 0; i < report.checks.size(); ++i) {
        const auto& c = report.checks[i];
        s.points.push_back({static_cast<double>(i), c.rhs > 0 ? c.lhs / c.rhs : 0.0});
      }
      series.push_back(std::move(s));
      write_text(join(dir, "inequalities.svg"),
                 svg_line_chart("Inequality utilization", "check index", "lhs / rhs", series));
      break;
    }
  }
}

void emit(const CutoffReport& report, const std::string& dir, EmitFormat format) {
  switch (format) {
    case EmitFormat::json:
      write_json(join(dir, "cutoff.json"), report.to_json());
      break;
    case EmitFormat::csv:
      write_text(join(dir, "cutoff.csv"), csv_text(report.csv_rows()));
      break;
    case EmitFormat::svg: {
      std::vector<Series> series;
      for (const auto& row : report.rows) {
        if (!row.slope) continue;
        Series s{row.field + " " + to_string(row.kind), {}};
        for (std::size_t i = 0; i < row.t.size(); ++i)
          s.points.push_back({std::log(row.t[i]), std::log(std::abs(row.excess[i]))});
        series.push_back(std::move(s));
      }
      write_text(join(dir, "cutoff.svg"), svg_line_chart("Cutoff excess", "log t", "log |excess|", series));
      break;
    }
  }
}

}  // namespace reimann
