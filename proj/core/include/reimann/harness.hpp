#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "reimann/emit.hpp"
#include "reimann/probes.hpp"
#include "reimann/seminorms.hpp"
#include "reimann/zoo.hpp"

namespace reimann {

/// Everything a report run depends on. Two runs with equal configs produce
/// byte-identical outputs.
struct RunConfig {
  std::uint64_t seed = 1;
  int points = 16;
  int directions = 64;
  int scales = 6;  // dyadic levels below r0
  double r0 = 0.5;
  double box = 1.0;
  int frames = 256;  // 3D R0 frames
  int log_directions = 32;
  double fd_step = 0.0;  // 0 selects closed-form Jacobians where available
  double slack = 0.05;
  std::vector<double> t_ladder{8.0, 16.0, 32.0};
  int kernel_nodes = 100000;
  /// Ratios outside [lo, hi] are flagged; null bounds are open.
  std::optional<double> envelope_lo;
  std::optional<double> envelope_hi;
  /// Field names; empty optional means every pointwise zoo field.
  std::optional<std::vector<std::string>> fields;

  /// Throws ConfigError on unknown keys, bad values or unknown fields.
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::string& path);
  nlohmann::ordered_json to_json() const;
  void validate() const;

  ProbeConfig probes(int dim) const;
  /// Twice the directions and base points, same seed and scales.
  ProbeConfig refined_probes(int dim) const;
  /// Selected pointwise zoo entries sorted by name.
  std::vector<ZooEntry> selected_fields() const;
};

struct Cell {
  std::optional<double> value;
  std::string probe_hash;
  nlohmann::ordered_json to_json() const;
};

struct RatioCell {
  std::string name;
  std::optional<double> value;
  std::optional<double> refined;
  std::string probe_hash;
  std::string refined_hash;
  bool guard_ok = true;      // refined <= value * (1 + slack)
  bool in_envelope = true;
  nlohmann::ordered_json to_json() const;
};

struct EquivalenceRow {
  std::string name;
  int dim = 2;
  std::vector<std::pair<std::string, Cell>> metrics;
  bool lipschitz_capped = false;
  std::vector<RatioCell> ratios;
  LogExtendedReport log_extended;
  std::string log_extended_hash;
  nlohmann::ordered_json to_json() const;
};

struct ScaleScan {
  std::string field;
  std::vector<double> scales;
  std::vector<double> quotients;
  double slope = 0.0;  // d quotient / d log(1/r)
  nlohmann::ordered_json to_json() const;
};

struct EquivalenceReport {
  nlohmann::ordered_json config;
  std::vector<EquivalenceRow> rows;
  std::vector<std::pair<std::string, double>> empirical_constants;
  std::vector<std::string> flags;
  std::optional<ScaleScan> lipschitz_scan;

  nlohmann::ordered_json to_json() const;
  std::vector<CsvRow> csv_rows() const;
};

struct InequalityCheck {
  std::string field;
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;  // constant * norm, before slack
  double constant = 0.0;
  double slack = 0.0;
  std::string lhs_hash;
  std::string rhs_hash;
  bool pass = false;
  nlohmann::ordered_json witness;  // null when not applicable
  nlohmann::ordered_json to_json() const;
};

struct InequalityReport {
  nlohmann::ordered_json config;
  std::vector<InequalityCheck> checks;
  bool all_pass() const;
  const InequalityCheck* first_failure() const;
  nlohmann::ordered_json to_json() const;
  std::vector<CsvRow> csv_rows() const;
};

struct CutoffRow {
  std::string field;
  SeminormKind kind = SeminormKind::qbar;
  std::vector<double> t;
  std::vector<double> base;     // estimate of v
  std::vector<double> cut;      // estimate of g_t v
  std::vector<double> excess;   // cut - base
  std::vector<std::string> probe_hashes;
  std::optional<double> slope;  // log |excess| against log t
  double c = 0.0;               // max t |excess|
  bool linear = false;
  bool pass = false;
  nlohmann::ordered_json to_json() const;
};

struct CutoffReport {
  nlohmann::ordered_json config;
  std::vector<CutoffRow> rows;
  bool all_pass() const;
  nlohmann::ordered_json to_json() const;
  std::vector<CsvRow> csv_rows() const;
};

EquivalenceReport run_equivalence_suite(const RunConfig& cfg);
/// Both sides of every inequality use one probe config; a mismatch is a bug
/// and raises Error.
InequalityReport run_inequality_suite(const RunConfig& cfg);
/// Probes base points in the annulus t <= |x| <= 2t for each t of the ladder.
CutoffReport run_cutoff_stability(const RunConfig& cfg);

enum class EmitFormat { json, csv, svg };

/// Writes <dir>/<stem>.json, <stem>.csv and the SVG charts. Throws IoError.
void emit(const EquivalenceReport& report, const std::string& dir, EmitFormat format);
void emit(const InequalityReport& report, const std::string& dir, EmitFormat format);
void emit(const CutoffReport& report, const std::string& dir, EmitFormat format);

}  // namespace reimann
