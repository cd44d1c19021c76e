#include "reimann/singular_integrals.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>

#include "reimann/parallel.hpp"

namespace reimann {

namespace {

// Antiderivative with d^2 G / dX dY = X / (X^2 + Y^2).
double cell_antiderivative(double x, double y) {
  const double r2 = x * x + y * y;
  if (r2 == 0.0) return 0.0;
  double g = -2.0 * y;
  if (y != 0.0) g += y * std::log(r2);
  if (x != 0.0) g += 2.0 * x * std::atan(y / x);
  return 0.5 * g;
}

// Exact integral of (X + iY)/(X^2 + Y^2) over [x1, x2] x [y1, y2].
Complex cell_integral(double x1, double x2, double y1, double y2) {
  const double re = cell_antiderivative(x2, y2) - cell_antiderivative(x1, y2) -
                    cell_antiderivative(x2, y1) + cell_antiderivative(x1, y1);
  const double im = cell_antiderivative(y2, x2) - cell_antiderivative(y2, x1) -
                    cell_antiderivative(y1, x2) + cell_antiderivative(y1, x1);
  return {re, im};
}

void require_planar_compact(const GridField& g, const char* what) {
  if (g.dim() != 2) throw DomainError(std::string(what) + ": requires a planar grid");
  if (g.mode() != BoundaryMode::compact)
    throw DomainError(std::string(what) + ": requires compact data (the kernel is not periodic)");
}

// Table of cell integrals indexed by the offset target - source.
class CellTable {
 public:
  explicit CellTable(const GridField& g) : n0_(g.shape()[0]), n1_(g.shape()[1]) {
    const double h0 = g.spacing()[0];
    const double h1 = g.spacing()[1];
    const int c0 = 2 * n0_;
    const int c1 = 2 * n1_;
    std::vector<double> xs(c0), ys(c1);
    for (int a = 0; a < c0; ++a) xs[a] = (a - (n0_ - 1) - 0.5) * h0;
    for (int b = 0; b < c1; ++b) ys[b] = (b - (n1_ - 1) - 0.5) * h1;
    std::vector<double> gx(static_cast<std::size_t>(c0) * c1), gy(gx.size());
    parallel_for(static_cast<std::size_t>(c0), [&](std::size_t a) {
      for (int b = 0; b < c1; ++b) {
        gx[a * c1 + b] = cell_antiderivative(xs[a], ys[b]);
        gy[a * c1 + b] = cell_antiderivative(ys[b], xs[a]);
      }
    });
    const int t0 = 2 * n0_ - 1;
    const int t1 = 2 * n1_ - 1;
    table_.resize(static_cast<std::size_t>(t0) * t1);
    for (int a = 0; a < t0; ++a) {
      for (int b = 0; b < t1; ++b) {
        const std::size_t i00 = static_cast<std::size_t>(a) * c1 + b;
        const std::size_t i10 = i00 + c1;
        const double re = gx[i10 + 1] - gx[i00 + 1] - gx[i10] + gx[i00];
        const double im = gy[i10 + 1] - gy[i00 + 1] - gy[i10] + gy[i00];
        table_[static_cast<std::size_t>(a) * t1 + b] = Complex(re, im);
      }
    }
  }

  // Sum over sources of table(t - s) * src(s) for every target t.
  std::vector<Complex> convolve(const std::vector<Complex>& src) const {
    struct Source {
      int i0, i1;
      Complex v;
    };
    std::vector<Source> sources;
    for (int i0 = 0; i0 < n0_; ++i0) {
      for (int i1 = 0; i1 < n1_; ++i1) {
        const Complex v = src[static_cast<std::size_t>(i0) * n1_ + i1];
        if (v != Complex(0.0, 0.0)) sources.push_back({i0, i1, v});
      }
    }
    const int t1 = 2 * n1_ - 1;
    std::vector<Complex> out(static_cast<std::size_t>(n0_) * n1_);
    parallel_for(static_cast<std::size_t>(n0_), [&](std::size_t row) {
      const int r0 = static_cast<int>(row);
      for (int c = 0; c < n1_; ++c) {
        Complex acc(0.0, 0.0);
        for (const auto& s : sources) {
          acc += table_[static_cast<std::size_t>(r0 - s.i0 + n0_ - 1) * t1 + (c - s.i1 + n1_ - 1)] * s.v;
        }
        out[row * n1_ + c] = acc;
      }
    });
    return out;
  }

 private:
  int n0_, n1_;
  std::vector<Complex> table_;
};

std::vector<Complex> complex_data(const GridField& g, const char* what) {
  if (!g.has("re")) throw DomainError(std::string(what) + ": expected complex components re/im");
  const auto& re = g["re"];
  std::vector<Complex> out(g.size());
  if (g.has("im")) {
    const auto& im = g["im"];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = {re[i], im[i]};
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = {re[i], 0.0};
  }
  return out;
}

GridField complex_grid(const GridField& like, const std::vector<Complex>& data) {
  GridField out = like.like();
  auto& re = out.add("re");
  auto& im = out.add("im");
  for (std::size_t i = 0; i < data.size(); ++i) {
    re[i] = data[i].real();
    im[i] = data[i].imag();
  }
  return out;
}

double l2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<double> difference(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

// Centered differences along `axis`, second-order one-sided at the ends.
std::vector<double> fd_axis(const GridField& g, const std::vector<double>& f, int axis) {
  const int n = g.shape()[axis];
  const double h = g.spacing()[axis];
  std::size_t stride = 1;
  for (int a = g.dim() - 1; a > axis; --a) stride *= g.shape()[a];
  std::vector<double> out(f.size(), 0.0);
  if (n < 3) return out;
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    const int i = static_cast<int>((flat / stride) % n);
    if (i == 0) {
      out[flat] = (-3.0 * f[flat] + 4.0 * f[flat + stride] - f[flat + 2 * stride]) / (2.0 * h);
    } else if (i == n - 1) {
      out[flat] = (3.0 * f[flat] - 4.0 * f[flat - stride] + f[flat - 2 * stride]) / (2.0 * h);
    } else {
      out[flat] = (f[flat + stride] - f[flat - stride]) / (2.0 * h);
    }
  }
  return out;
}

}  // namespace

GridField cauchy_transform(const GridField& g) {
  require_planar_compact(g, "cauchy_transform");
  auto out = CellTable(g).convolve(complex_data(g, "cauchy_transform"));
  for (auto& v : out) v /= std::numbers::pi;
  return complex_grid(g, out);
}

BeurlingResult beurling_recover_dbar_report(const GridField& db) {
  if (db.dim() != 2) throw DomainError("beurling_recover_dbar: requires a planar grid");
  db.require_compact_margin(2);
  const int n0 = db.shape()[0];
  const int n1 = db.shape()[1];
  const auto data = complex_data(db, "beurling_recover_dbar");
  SpectralPlan plan({2 * n0, 2 * n1}, db.spacing());
  std::vector<Complex> padded(plan.size(), Complex(0.0, 0.0));
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n1; ++j)
      padded[static_cast<std::size_t>(i) * 2 * n1 + j] = data[static_cast<std::size_t>(i) * n1 + j];
  const auto full = plan.apply(
      padded,
      [](const Vec& k) {
        const Complex xi(k[0], k[1]);
        return xi / std::conj(xi);
      },
      false);
  std::vector<Complex> out(data.size());
  double inside = 0.0, total = 0.0;
  for (int i = 0; i < 2 * n0; ++i) {
    for (int j = 0; j < 2 * n1; ++j) {
      const Complex v = full[static_cast<std::size_t>(i) * 2 * n1 + j];
      total += std::norm(v);
      if (i < n0 && j < n1) {
        out[static_cast<std::size_t>(i) * n1 + j] = v;
        inside += std::norm(v);
      }
    }
  }
  BeurlingResult r;
  r.dbar = complex_grid(db, out);
  r.tail_fraction = total > 0.0 ? std::sqrt(std::max(0.0, total - inside) / total) : 0.0;
  return r;
}

GridField beurling_recover_dbar(const GridField& db) { return beurling_recover_dbar_report(db).dbar; }

GridField biot_savart(const GridField& omega) {
  require_planar_compact(omega, "biot_savart");
  if (!omega.has("f")) throw DomainError("biot_savart: expected scalar component f");
  const auto& w = omega["f"];
  const auto conv = CellTable(omega).convolve(std::vector<Complex>(w.begin(), w.end()));
  GridField out = omega.like();
  auto& vx = out.add("x");
  auto& vy = out.add("y");
  const Complex factor(0.0, 0.5 / std::numbers::pi);
  for (std::size_t i = 0; i < conv.size(); ++i) {
    const Complex v = factor * conv[i];
    vx[i] = v.real();
    vy[i] = v.imag();
  }
  return out;
}

VectorField biot_savart_field(const GridField& omega, int near_cells, std::string name) {
  require_planar_compact(omega, "biot_savart_field");
  if (!omega.has("f")) throw DomainError("biot_savart_field: expected scalar component f");
  struct Cell {
    double x, y, w;
  };
  auto cells = std::make_shared<std::vector<Cell>>();
  const auto& f = omega["f"];
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (f[i] == 0.0) continue;
    const Vec p = omega.point(i);
    cells->push_back({p[0], p[1], f[i]});
  }
  const double h0 = omega.spacing()[0];
  const double h1 = omega.spacing()[1];
  const double near2 = std::pow(near_cells * std::max(h0, h1), 2);
  return VectorField(std::move(name), 2, [cells, h0, h1, near2](const Vec& p) -> Vec {
    Complex acc(0.0, 0.0);
    for (const auto& c : *cells) {
      const double dx = p[0] - c.x;
      const double dy = p[1] - c.y;
      const double r2 = dx * dx + dy * dy;
      Complex k;
      if (r2 <= near2) {
        k = cell_integral(dx - 0.5 * h0, dx + 0.5 * h0, dy - 0.5 * h1, dy + 0.5 * h1);
      } else {
        k = Complex(dx, dy) * (h0 * h1 / r2);
      }
      acc += c.w * k;
    }
    const Complex v = Complex(0.0, 0.5 / std::numbers::pi) * acc;
    return vec2(v.real(), v.imag());
  });
}

GridField disk_vorticity(int n, double radius, double half_width) {
  if (!(radius > 0.0)) throw DomainError("disk_vorticity: radius must be positive");
  GridField g = centered_grid(2, n, half_width, BoundaryMode::compact);
  auto& f = g.add("f");
  const double h = g.spacing()[0];
  constexpr int sub = 8;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec c = g.point(i);
    const double far = std::hypot(std::abs(c[0]) + 0.5 * h, std::abs(c[1]) + 0.5 * h);
    const double nx = std::max(0.0, std::abs(c[0]) - 0.5 * h);
    const double ny = std::max(0.0, std::abs(c[1]) - 0.5 * h);
    if (far <= radius) {
      f[i] = 1.0;
    } else if (std::hypot(nx, ny) >= radius) {
      f[i] = 0.0;
    } else {
      int inside = 0;
      for (int a = 0; a < sub; ++a) {
        for (int b = 0; b < sub; ++b) {
          const double x = c[0] + ((a + 0.5) / sub - 0.5) * h;
          const double y = c[1] + ((b + 0.5) / sub - 0.5) * h;
          if (x * x + y * y <= radius * radius) ++inside;
        }
      }
      f[i] = static_cast<double>(inside) / (sub * sub);
    }
  }
  return g;
}

GridField quadrant_vorticity(int n) {
  if (n < 32 || n % 32 != 0) throw DomainError("quadrant_vorticity: n must be a positive multiple of 32");
  const int margin = n / 32;
  const double h = 1.0 / (n / 2 - margin);
  const double o = -(n / 2) * h + 0.5 * h;
  GridField g({n, n}, {o, o}, {h, h}, BoundaryMode::compact);
  auto& f = g.add("f");
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec c = g.point(i);
    if (std::abs(c[0]) < 1.0 && std::abs(c[1]) < 1.0) f[i] = (c[0] * c[1] > 0.0) ? 1.0 : -1.0;
  }
  return g;
}

GridField riesz_transform(const GridField& g, int j, ZeroModePolicy policy) {
  if (g.mode() != BoundaryMode::periodic) throw DomainError("riesz_transform: requires a periodic grid");
  if (j < 0 || j >= g.dim()) throw DomainError("riesz_transform: index out of range");
  if (!g.has("f")) throw DomainError("riesz_transform: expected scalar component f");
  SpectralPlan plan = SpectralPlan::for_grid(g, policy);
  const auto data = plan.zero_mode(g["f"]);
  GridField out = g.like();
  out.add("f") = plan.apply_real(data, [j](const Vec& k) {
    const double norm = k.norm();
    if (norm == 0.0) return Complex(0.0, 0.0);
    return Complex(0.0, -k[j] / norm);
  });
  return out;
}

nlohmann::ordered_json HodgeReport::to_json() const {
  return {{"relative_l2", relative_l2},         {"relative_linf", relative_linf},
          {"div_residual", div_residual},       {"curl_residual", curl_residual},
          {"gradient_part", gradient_part},     {"rotational_part", rotational_part}};
}

HodgeReport hodge_check(const GridField& b, ZeroModePolicy policy) {
  if (b.mode() != BoundaryMode::periodic) throw DomainError("hodge_check: requires a periodic grid");
  const int n = b.dim();
  const auto names = vector_component_names(n);
  SpectralPlan plan = SpectralPlan::for_grid(b, policy);
  std::vector<std::vector<double>> bb(n), u(n);
  const auto inv_lap = [](const Vec& k) {
    const double k2 = k.squaredNorm();
    return k2 == 0.0 ? Complex(0.0, 0.0) : Complex(-1.0 / k2, 0.0);
  };
  const auto lap = [](const Vec& k) { return Complex(-k.squaredNorm(), 0.0); };
  for (int i = 0; i < n; ++i) {
    if (!b.has(names[i])) throw DomainError("hodge_check: missing component " + names[i]);
    bb[i] = plan.zero_mode(b[names[i]]);
    u[i] = plan.apply_real(bb[i], inv_lap);
  }
  // du[i][j] = d_j u_i
  std::vector<std::vector<std::vector<double>>> du(n, std::vector<std::vector<double>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) du[i][j] = plan.derivative(u[i], j);
  std::vector<double> divu(plan.size(), 0.0);
  for (int i = 0; i < n; ++i)
    for (std::size_t f = 0; f < divu.size(); ++f) divu[f] += du[i][i][f];

  double err2 = 0.0, b2 = 0.0, errinf = 0.0, binf = 0.0, grad2 = 0.0, rot2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto grad = plan.derivative(divu, i);
    std::vector<double> rot(plan.size(), 0.0);
    for (int j = 0; j < n; ++j) {
      std::vector<double> c(plan.size());
      for (std::size_t f = 0; f < c.size(); ++f) c[f] = du[i][j][f] - du[j][i][f];
      const auto dc = plan.derivative(c, j);
      for (std::size_t f = 0; f < c.size(); ++f) rot[f] += dc[f];
    }
    for (std::size_t f = 0; f < plan.size(); ++f) {
      const double e = grad[f] + rot[f] - bb[i][f];
      err2 += e * e;
      b2 += bb[i][f] * bb[i][f];
      errinf = std::max(errinf, std::abs(e));
      binf = std::max(binf, std::abs(bb[i][f]));
      grad2 += grad[f] * grad[f];
      rot2 += rot[f] * rot[f];
    }
  }
  HodgeReport r;
  const double bn = std::sqrt(b2);
  r.relative_l2 = bn > 0.0 ? std::sqrt(err2) / bn : std::sqrt(err2);
  r.relative_linf = binf > 0.0 ? errinf / binf : errinf;
  r.gradient_part = bn > 0.0 ? std::sqrt(grad2) / bn : 0.0;
  r.rotational_part = bn > 0.0 ? std::sqrt(rot2) / bn : 0.0;

  std::vector<double> divb(plan.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    const auto d = plan.derivative(bb[i], i);
    for (std::size_t f = 0; f < d.size(); ++f) divb[f] += d[f];
  }
  const auto lap_divu = plan.apply_real(divu, lap);
  const double divb_n = l2(divb);
  const double div_err = l2(difference(lap_divu, divb));
  r.div_residual = divb_n > 0.0 ? div_err / divb_n : div_err;

  double curl_err2 = 0.0, curl_b2 = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<double> cu(plan.size());
      for (std::size_t f = 0; f < cu.size(); ++f) cu[f] = du[i][j][f] - du[j][i][f];
      const auto lap_cu = plan.apply_real(cu, lap);
      const auto dbij = plan.derivative(bb[i], j);
      const auto dbji = plan.derivative(bb[j], i);
      for (std::size_t f = 0; f < cu.size(); ++f) {
        const double cb = dbij[f] - dbji[f];
        curl_err2 += (lap_cu[f] - cb) * (lap_cu[f] - cb);
        curl_b2 += cb * cb;
      }
    }
  }
  r.curl_residual = curl_b2 > 0.0 ? std::sqrt(curl_err2 / curl_b2) : std::sqrt(curl_err2);
  return r;
}

GridField grid_derivative_bundle(const GridField& b) {
  const int n = b.dim();
  const auto names = vector_component_names(n);
  for (const auto& nm : names) {
    if (!b.has(nm)) throw DomainError("grid_derivative_bundle: missing component " + nm);
  }
  std::optional<SpectralPlan> plan;
  if (b.mode() == BoundaryMode::periodic) plan.emplace(SpectralPlan::for_grid(b));
  std::vector<std::vector<std::vector<double>>> jac(n, std::vector<std::vector<double>>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      jac[i][j] = plan ? plan->derivative(b[names[i]], j) : fd_axis(b, b[names[i]], j);
    }
  }
  GridField out = b.like();
  const std::size_t size = b.size();
  auto& div = out.add("div");
  for (int i = 0; i < n; ++i)
    for (std::size_t f = 0; f < size; ++f) div[f] += jac[i][i][f];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::string ij = names[i] + names[j];
      out.add("j" + ij) = jac[i][j];
      auto& c = out.add("c" + ij);
      auto& s = out.add("s" + ij);
      auto& a = out.add("a" + ij);
      for (std::size_t f = 0; f < size; ++f) {
        c[f] = jac[i][j][f] - jac[j][i][f];
        s[f] = 0.5 * (jac[i][j][f] + jac[j][i][f]) - (i == j ? div[f] / n : 0.0);
        a[f] = jac[i][j][f] - s[f];
      }
    }
  }
  if (n == 2) {
    auto& curl = out.add("curl");
    auto& dre = out.add("d_re");
    auto& dim_ = out.add("d_im");
    auto& bre = out.add("dbar_re");
    auto& bim = out.add("dbar_im");
    for (std::size_t f = 0; f < size; ++f) {
      curl[f] = jac[1][0][f] - jac[0][1][f];
      dre[f] = 0.5 * div[f];
      dim_[f] = 0.5 * curl[f];
      bre[f] = 0.5 * (jac[0][0][f] - jac[1][1][f]);
      bim[f] = 0.5 * (jac[1][0][f] + jac[0][1][f]);
    }
  }
  return out;
}

}  // namespace reimann
