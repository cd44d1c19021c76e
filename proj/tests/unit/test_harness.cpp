#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "reimann/harness.hpp"

using namespace reimann;

namespace {

RunConfig small(std::vector<std::string> fields) {
  RunConfig cfg;
  cfg.points = 4;
  cfg.directions = 32;
  cfg.scales = 3;
  cfg.frames = 32;
  cfg.log_directions = 8;
  cfg.kernel_nodes = 200;
  cfg.fields = std::move(fields);
  return cfg;
}

std::optional<double> metric(const EquivalenceRow& row, const std::string& key) {
  for (const auto& [k, c] : row.metrics) {
    if (k == key) return c.value;
  }
  FAIL("missing metric " << key);
  return std::nullopt;
}

const RatioCell* ratio(const EquivalenceRow& row, const std::string& name) {
  for (const auto& r : row.ratios) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("run config parsing") {
  const auto cfg = RunConfig::from_json(nlohmann::json::parse(R"({"seed": 3, "points": 5, "fields": ["rot"]})"));
  CHECK(cfg.seed == 3);
  CHECK(cfg.points == 5);
  REQUIRE(cfg.fields);
  CHECK(cfg.fields->size() == 1);
  CHECK(cfg.directions == RunConfig{}.directions);

  const auto back = RunConfig::from_json(nlohmann::json::parse(cfg.to_json().dump()));
  CHECK(back.to_json() == cfg.to_json());

  for (const char* bad : {R"({"sed": 1})", R"({"seed": -1})", R"({"points": "x"})", R"({"t_ladder": [2.0]})",
                          R"({"t_ladder": [16, 8]})", R"({"fields": ["nope"]})", R"({"fields": ["quadrant"]})",
                          R"({"envelope": {"mid": 1}})", R"({"envelope": {"lo": 2, "hi": 1}})", R"([1, 2])",
                          R"({"directions": 2})"}) {
    INFO(bad);
    CHECK_THROWS_AS(RunConfig::from_json(nlohmann::json::parse(bad)), ConfigError);
  }
  CHECK_THROWS_AS(RunConfig::load("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("field selection") {
  RunConfig all;
  const auto entries = all.selected_fields();
  CHECK(entries.size() >= 8);
  for (std::size_t i = 1; i < entries.size(); ++i) CHECK(entries[i - 1].name < entries[i].name);
  for (const auto& e : entries) CHECK(e.is_pointwise());

  auto cfg = small({"sym", "conj"});
  const auto sel = cfg.selected_fields();
  REQUIRE(sel.size() == 2);
  CHECK(sel[0].name == "conj");
  CHECK(sel[1].name == "sym");
}

TEST_CASE("equivalence rows for linear fields") {
  const auto rep = run_equivalence_suite(small({"rot", "conj", "sym"}));
  REQUIRE(rep.rows.size() == 3);
  const auto& conj = rep.rows[0];
  const auto& rot = rep.rows[1];
  const auto& sym = rep.rows[2];
  CHECK(rot.name == "rot");

  CHECK(*metric(rot, "qbar") == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(*metric(rot, "r") == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(*metric(rot, "sup_d") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(*metric(rot, "r0") == doctest::Approx(2.0).epsilon(1e-4));
  REQUIRE(ratio(rot, "qbar/sup_d"));
  CHECK(*ratio(rot, "qbar/sup_d")->value == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(*ratio(rot, "r/sup_d")->value == doctest::Approx(2.0).epsilon(1e-4));
  CHECK_FALSE(rot.lipschitz_capped);

  CHECK(*metric(conj, "qbar") <= 1e-8);
  CHECK(*metric(conj, "r") <= 1e-8);
  CHECK(*metric(conj, "lipschitz") == doctest::Approx(1.0).epsilon(1e-6));
  const auto* conj_q = ratio(conj, "qbar/sup_d");
  CHECK_FALSE((conj_q && conj_q->value));

  CHECK(*metric(sym, "r0") <= 1e-12);
  CHECK(*metric(sym, "sup_curl") <= 1e-12);
  CHECK(*metric(sym, "lipschitz") > 0.0);

  for (const auto& row : rep.rows) {
    for (const auto& r : row.ratios) CHECK(r.guard_ok);
    for (const auto& [k, c] : row.metrics) CHECK(c.probe_hash == row.metrics.front().second.probe_hash);
  }
  CHECK_FALSE(rep.lipschitz_scan);
}

TEST_CASE("equivalence report csv") {
  const auto rep = run_equivalence_suite(small({"rot"}));
  const auto text = csv_text(rep.csv_rows());
  CHECK(text.rfind("field,metric,value,probe_hash\n", 0) == 0);
  CHECK(text.find("rot,qbar,") != std::string::npos);

  const auto empty = run_equivalence_suite(small({}));
  CHECK(empty.rows.empty());
  CHECK(csv_text(empty.csv_rows()) == "field,metric,value,probe_hash\n");
}

TEST_CASE("inequality suite passes and shares probe hashes") {
  const auto rep = run_inequality_suite(small({"rot", "bump"}));
  CHECK(rep.all_pass());
  CHECK(rep.first_failure() == nullptr);
  bool saw_kernel = false;
  for (const auto& c : rep.checks) {
    INFO(c.field << " " << c.name);
    CHECK(c.lhs_hash == c.rhs_hash);
    CHECK(c.lhs <= c.rhs * (1 + c.slack) + 1e-12);
    saw_kernel = saw_kernel || c.field.rfind("poisson_", 0) == 0;
  }
  CHECK(saw_kernel);
}

TEST_CASE("cutoff stability on a linear field") {
  auto cfg = small({"rot"});
  const auto rep = run_cutoff_stability(cfg);
  REQUIRE_FALSE(rep.rows.empty());
  for (const auto& row : rep.rows) {
    INFO(to_string(row.kind));
    CHECK(row.linear);
    CHECK(row.t.size() == cfg.t_ladder.size());
    CHECK(row.pass);
    if (row.slope) CHECK(*row.slope <= -0.8);
  }
  CHECK(rep.all_pass());
}

TEST_CASE("emitters write the expected files") {
  const auto dir = std::filesystem::temp_directory_path() / "reimann_harness_test";
  std::filesystem::remove_all(dir);
  const auto rep = run_equivalence_suite(small({"rot"}));
  emit(rep, dir.string(), EmitFormat::json);
  emit(rep, dir.string(), EmitFormat::csv);
  emit(rep, dir.string(), EmitFormat::svg);
  CHECK(nlohmann::json::parse(slurp(dir / "equivalence.json")).contains("rows"));
  CHECK(slurp(dir / "equivalence.csv").rfind("field,metric", 0) == 0);
  CHECK(slurp(dir / "ratios.svg").find("<svg") != std::string::npos);

  const auto again = run_equivalence_suite(small({"rot"}));
  CHECK(again.to_json().dump() == rep.to_json().dump());
  std::filesystem::remove_all(dir);
}
