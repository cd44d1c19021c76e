// reimann-kit: command line front end for the reimann core library.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reimann/diffops.hpp"
#include "reimann/emit.hpp"
#include "reimann/grid.hpp"
#include "reimann/halfspace.hpp"
#include "reimann/harness.hpp"
#include "reimann/seminorms.hpp"
#include "reimann/singular_integrals.hpp"
#include "reimann/zoo.hpp"

using namespace reimann;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;

Vec parse_point(const std::string& text, int dim) {
  std::vector<double> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      coords.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse coordinate '" + item + "'");
    }
  }
  if (static_cast<int>(coords.size()) != dim)
    throw ConfigError("point '" + text + "' must have " + std::to_string(dim) + " coordinates");
  Vec x(dim);
  for (int i = 0; i < dim; ++i) x[i] = coords[i];
  return x;
}

VectorField pointwise_field(const std::string& name) {
  const auto entry = find_zoo_entry(name);
  if (!entry.is_pointwise()) throw ConfigError("field '" + name + "' is grid-only");
  return *entry.field;
}

void print_json(const ojson& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------- zoo

struct ZooOpts {
  int dim = 2;
};

int run_zoo_list(const ZooOpts& o) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& e : make_zoo(o.dim)) {
    nlohmann::ordered_json j;
    j["name"] = e.name;
    j["dim"] = e.dim;
    j["lipschitz"] = e.lipschitz;
    j["pointwise"] = e.is_pointwise();
    if (!e.is_pointwise()) j["grid_recipe"] = e.grid_recipe;
    j["description"] = e.description;
    auto expected = nlohmann::ordered_json::object();
    for (const auto& ev : e.expected) expected[ev.key] = {{"value", ev.value}, {"source", ev.provenance}};
    j["expected"] = expected;
    out.push_back(j);
  }
  std::cout << out.dump(2) << "\n";
  return kExitPass;
}

// ---------------------------------------------------------------- seminorm

struct SeminormOpts {
  std::string field;
  std::string kind;
  int points = 16;
  int dirs = 64;
  int scales = 6;
  double r0 = 0.5;
  std::uint64_t seed = 1;
  double box = 1.0;
  int frames = 256;
  std::string out;
};

int run_seminorm(const SeminormOpts& o) {
  const auto v = pointwise_field(o.field);
  const auto kind = parse_seminorm_kind(o.kind);
  auto pc = ProbeConfig::make(v.dim(), o.points, o.dirs, o.scales, o.r0, o.seed, o.box);
  if (v.dim() == 3) pc.frames = o.frames;
  pc.validate(v.dim());
  const auto est = estimate_seminorm(v, kind, pc);
  ojson j;
  j["field"] = v.name();
  j["estimate"] = est.to_json();
  j["probes"] = pc.to_json();
  if (!o.out.empty()) write_json(o.out, j);
  ojson brief = j;
  brief.erase("probes");
  print_json(brief);
  return kExitPass;
}

// ---------------------------------------------------------------- diffops

struct DiffopsOpts {
  std::string field;
  std::string point;
  double step = 1e-4;
  std::string out;
};

int run_diffops(const DiffopsOpts& o) {
  const auto v = pointwise_field(o.field);
  const Vec x = parse_point(o.point, v.dim());
  if (!(o.step >= 0.0)) throw ConfigError("--step must be nonnegative");
  ojson j;
  j["field"] = v.name();
  j["point"] = std::vector<double>(x.data(), x.data() + x.size());
  j["step"] = o.step;
  j["bundle"] = derivative_bundle(v, x, o.step).to_json();
  if (!o.out.empty()) write_json(o.out, j);
  print_json(j);
  return kExitPass;
}

// ---------------------------------------------------------------- poisson

struct PoissonCheckOpts {
  int dim = 2;
  int res = 64;
  int nodes = 100000;
  std::uint64_t seed = 1;
};

int run_poisson_check(const PoissonCheckOpts& o) {
  if (o.dim < 1 || o.dim > 3) throw ConfigError("--dim must be 1, 2 or 3");
  if (o.res < 4) throw ConfigError("--res must be at least 4");
  QuadratureRule quad;
  quad.angular = o.res;
  bool pass = true;
  ojson masses = ojson::array();
  for (double y : {0.1, 1.0, 10.0}) {
    const double truncation = 1e5 * y;
    const double m = poisson_mass(o.dim, y, truncation, quad);
    const bool ok = m >= 0.9999 && m <= 1.0;
    pass = pass && ok;
    masses.push_back({{"y", y}, {"truncation", truncation}, {"mass", m}, {"pass", ok}});
  }
  const auto k = kernel_bound_check(o.dim, o.nodes, o.seed);
  pass = pass && k.pass;
  ojson j;
  j["dim"] = o.dim;
  j["quadrature"] = quad.to_json();
  j["mass"] = masses;
  j["kernel_bounds"] = {{"nodes", k.nodes},
                        {"max_dy_ratio", k.max_dy_ratio},
                        {"max_dz_ratio", k.max_dz_ratio},
                        {"pass", k.pass}};
  j["pass"] = pass;
  print_json(j);
  return pass ? kExitPass : kExitViolation;
}

struct PoissonExtendOpts {
  std::string field;
  double y = 0.1;
  int grid = 32;
  double half_width = 1.5;
  int res = 64;
  std::string out;
};

int run_poisson_extend(const PoissonExtendOpts& o) {
  const auto v = pointwise_field(o.field);
  if (!(o.y > 0.0)) throw ConfigError("--y must be positive");
  if (o.grid < 2) throw ConfigError("--grid must be at least 2");
  QuadratureRule quad;
  quad.angular = o.res;
  const HarmonicExtension ext(v, quad);
  auto g = centered_grid(v.dim(), o.grid, o.half_width, BoundaryMode::compact);
  const auto names = vector_component_names(v.dim());
  std::vector<std::vector<double>*> cols;
  for (const auto& n : names) cols.push_back(&g.add(n));
  for (std::size_t f = 0; f < g.size(); ++f) {
    const Mat u = extend(ext, g.point(f), o.y, ExtensionOrder::value);
    for (std::size_t c = 0; c < cols.size(); ++c) (*cols[c])[f] = u(static_cast<Eigen::Index>(c), 0);
  }
  if (o.out.empty()) {
    print_json(g.to_json());
  } else {
    g.save(o.out);
    std::cout << "wrote " << o.out << " (" << g.size() << " points, y = " << o.y << ")\n";
  }
  return kExitPass;
}

// ---------------------------------------------------------------- singular integrals

struct BiotSavartOpts {
  std::vector<std::string> vorticity{"disk"};
  int grid = 256;
  std::string out;
};

int run_biot_savart(const BiotSavartOpts& o) {
  GridField omega;
  const std::string& source = o.vorticity.front();
  if (source == "disk") {
    omega = disk_vorticity(o.grid);
  } else if (source == "quadrant") {
    omega = quadrant_vorticity(o.grid);
  } else if (source == "file") {
    if (o.vorticity.size() != 2) throw ConfigError("--vorticity file requires a path");
    omega = GridField::load(o.vorticity[1]);
  } else {
    throw ConfigError("unknown vorticity '" + source + "' (disk, quadrant, file PATH)");
  }
  const auto vel = biot_savart(omega);
  const auto bundle = grid_derivative_bundle(vel);
  double vmax = 0.0, div_max = 0.0;
  const double h = vel.spacing()[0];
  for (std::size_t f = 0; f < vel.size(); ++f) {
    vmax = std::max(vmax, std::hypot(vel["x"][f], vel["y"][f]));
    div_max = std::max(div_max, h * std::abs(bundle["div"][f]));
  }
  if (!o.out.empty()) vel.save(o.out);
  print_json({{"vorticity", source},
              {"shape", vel.shape()},
              {"max_speed", vmax},
              {"max_div_grid_units", div_max},
              {"out", o.out}});
  return kExitPass;
}

struct HodgeOpts {
  std::string in;
  double tol = 1e-10;
  std::string zero_mode = "project_out";
};

int run_hodge(const HodgeOpts& o) {
  const auto b = GridField::load(o.in);
  ZeroModePolicy policy;
  if (o.zero_mode == "project_out") {
    policy = ZeroModePolicy::project_out;
  } else if (o.zero_mode == "error") {
    policy = ZeroModePolicy::error;
  } else {
    throw ConfigError("--zero-mode must be project_out or error");
  }
  const auto rep = hodge_check(b, policy);
  ojson j = rep.to_json();
  j["tolerance"] = o.tol;
  j["pass"] = rep.relative_l2 <= o.tol;
  print_json(j);
  return rep.relative_l2 <= o.tol ? kExitPass : kExitViolation;
}

struct BeurlingOpts {
  std::string in;
  std::string out;
};

int run_beurling(const BeurlingOpts& o) {
  const auto db = GridField::load(o.in);
  const auto res = beurling_recover_dbar_report(db);
  if (!o.out.empty()) res.dbar.save(o.out);
  print_json({{"shape", res.dbar.shape()}, {"tail_fraction", res.tail_fraction}, {"out", o.out}});
  return kExitPass;
}

// ---------------------------------------------------------------- reports

struct ReportOpts {
  std::string config;
  std::string out = "report";
};

template <typename Report>
void emit_all(const Report& r, const std::string& dir) {
  emit(r, dir, EmitFormat::json);
  emit(r, dir, EmitFormat::csv);
  emit(r, dir, EmitFormat::svg);
}

int run_report(const std::string& which, const ReportOpts& o) {
  const auto cfg = RunConfig::load(o.config);
  if (which == "equivalence") {
    const auto rep = run_equivalence_suite(cfg);
    emit_all(rep, o.out);
    for (const auto& f : rep.flags) std::cerr << "flag: " << f << "\n";
    std::cout << "equivalence: " << rep.rows.size() << " fields, " << rep.flags.size() << " flags -> " << o.out
              << "\n";
    return kExitPass;
  }
  if (which == "inequalities") {
    const auto rep = run_inequality_suite(cfg);
    emit_all(rep, o.out);
    if (const auto* fail = rep.first_failure()) {
      std::cerr << "inequality violated: " << fail->field << " " << fail->name << ": lhs " << format_double(fail->lhs)
                << " > " << format_double(fail->rhs) << " * (1 + " << format_double(fail->slack) << ")\n"
                << "witness: " << fail->witness.dump() << "\n";
      return kExitViolation;
    }
    std::cout << "inequalities: " << rep.checks.size() << " checks pass -> " << o.out << "\n";
    return kExitPass;
  }
  const auto rep = run_cutoff_stability(cfg);
  emit_all(rep, o.out);
  for (const auto& row : rep.rows) {
    if (!row.pass) {
      std::cerr << "cutoff check failed: " << row.field << " " << to_string(row.kind) << "\n";
      return kExitViolation;
    }
  }
  std::cout << "cutoff: " << rep.rows.size() << " rows pass -> " << o.out << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reimann-kit: difference-quotient seminorms, harmonic extensions and singular integrals"};
  app.require_subcommand(1);

  int exit_code = kExitPass;
  std::function<int()> action;

  auto* zoo = app.add_subcommand("zoo", "Analytic test fields");
  zoo->require_subcommand(1);
  ZooOpts zoo_opts;
  auto* zoo_list = zoo->add_subcommand("list", "List the zoo for one dimension");
  zoo_list->add_option("--dim", zoo_opts.dim, "Dimension (2 or 3)")->capture_default_str();
  zoo_list->callback([&] { action = [&] { return run_zoo_list(zoo_opts); }; });

  SeminormOpts sn;
  auto* seminorm = app.add_subcommand("seminorm", "Sampled seminorm estimate for a zoo field");
  seminorm->add_option("--field", sn.field, "Zoo field name")->required();
  seminorm->add_option("--kind", sn.kind, "qbar | r | r0 | zygmund | lipschitz | growth")->required();
  seminorm->add_option("--points", sn.points, "Random base points besides the origin")->capture_default_str();
  seminorm->add_option("--dirs", sn.dirs, "Directions")->capture_default_str();
  seminorm->add_option("--scales", sn.scales, "Dyadic levels below r0")->capture_default_str();
  seminorm->add_option("--r0", sn.r0, "Largest offset")->capture_default_str();
  seminorm->add_option("--seed", sn.seed, "Seed")->capture_default_str();
  seminorm->add_option("--box", sn.box, "Half width of the base point box")->capture_default_str();
  seminorm->add_option("--frames", sn.frames, "R0 frames in R^3")->capture_default_str();
  seminorm->add_option("--out", sn.out, "Write the estimate as JSON");
  seminorm->callback([&] { action = [&] { return run_seminorm(sn); }; });

  DiffopsOpts dop;
  auto* diffops = app.add_subcommand("diffops", "Jacobian, div, curl, S, A and Wirtinger derivatives at a point");
  diffops->add_option("--field", dop.field, "Zoo field name")->required();
  diffops->add_option("--point", dop.point, "Comma separated coordinates")->required();
  diffops->add_option("--step", dop.step, "Central difference step (0: closed form)")->capture_default_str();
  diffops->add_option("--out", dop.out, "Write the bundle as JSON");
  diffops->callback([&] { action = [&] { return run_diffops(dop); }; });

  auto* poisson = app.add_subcommand("poisson", "Poisson kernel and harmonic extensions");
  poisson->require_subcommand(1);
  PoissonCheckOpts pc;
  auto* pcheck = poisson->add_subcommand("check", "Kernel mass and derivative bounds");
  pcheck->add_option("--dim", pc.dim, "Boundary dimension n")->capture_default_str();
  pcheck->add_option("--res", pc.res, "Angular quadrature nodes")->capture_default_str();
  pcheck->add_option("--nodes", pc.nodes, "Random nodes for the bound check")->capture_default_str();
  pcheck->add_option("--seed", pc.seed, "Seed")->capture_default_str();
  pcheck->callback([&] { action = [&] { return run_poisson_check(pc); }; });
  PoissonExtendOpts pe;
  auto* pext = poisson->add_subcommand("extend", "Harmonic extension of a compactly supported field at height y");
  pext->add_option("--field", pe.field, "Zoo field name")->required();
  pext->add_option("--y", pe.y, "Height")->capture_default_str();
  pext->add_option("--grid", pe.grid, "Samples per axis")->capture_default_str();
  pext->add_option("--half-width", pe.half_width, "Grid half width")->capture_default_str();
  pext->add_option("--res", pe.res, "Angular quadrature nodes")->capture_default_str();
  pext->add_option("--out", pe.out, "Output grid JSON");
  pext->callback([&] { action = [&] { return run_poisson_extend(pe); }; });

  BiotSavartOpts bs;
  auto* biot = app.add_subcommand("biot-savart", "Velocity from gridded vorticity");
  biot->add_option("--vorticity", bs.vorticity, "disk | quadrant | file PATH")->expected(1, 2)->capture_default_str();
  biot->add_option("--grid", bs.grid, "Cells per axis")->capture_default_str();
  biot->add_option("--out", bs.out, "Output grid JSON");
  biot->callback([&] { action = [&] { return run_biot_savart(bs); }; });

  HodgeOpts ho;
  auto* hodge = app.add_subcommand("hodge-check", "Spectral check of b = grad div u + div curl u");
  hodge->add_option("--in", ho.in, "Periodic vector grid JSON")->required();
  hodge->add_option("--tol", ho.tol, "Relative L2 tolerance")->capture_default_str();
  hodge->add_option("--zero-mode", ho.zero_mode, "project_out | error")->capture_default_str();
  hodge->callback([&] { action = [&] { return run_hodge(ho); }; });

  BeurlingOpts be;
  auto* beurling = app.add_subcommand("beurling", "Recover dbar b from d b");
  beurling->add_option("--in", be.in, "Complex grid JSON (re, im) holding d b")->required();
  beurling->add_option("--out", be.out, "Output grid JSON");
  beurling->callback([&] { action = [&] { return run_beurling(be); }; });

  auto* report = app.add_subcommand("report", "Experiment reports");
  report->require_subcommand(1);
  ReportOpts ro;
  for (const char* which : {"equivalence", "inequalities", "cutoff"}) {
    auto* sub = report->add_subcommand(which, std::string("Run the ") + which + " suite");
    sub->add_option("--config", ro.config, "RunConfig JSON")->required();
    sub->add_option("--out", ro.out, "Output directory")->capture_default_str();
    const std::string name = which;
    sub->callback([&, name] { action = [&, name] { return run_report(name, ro); }; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    exit_code = action ? action() : kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return exit_code;
}
