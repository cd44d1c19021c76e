#pragma once

#include <json.hpp>

#include "reimann/fields.hpp"
#include "reimann/grid.hpp"
#include "reimann/spectral.hpp"

namespace reimann {

// Planar convolutions below treat grid data as constant on each cell and
// integrate the kernel exactly over every cell (closed-form antiderivatives of
// x/|z|^2 and y/|z|^2), so the singular cell contributes its exact value 0.

/// (1/(pi conj z)) * g for complex data ("re", "im") on a compact planar grid.
/// The output b satisfies d b = g, where d = (d_x - i d_y)/2.
GridField cauchy_transform(const GridField& g);

struct BeurlingResult {
  GridField dbar;
  /// L2 mass of the recovered field that falls in the padding, relative to
  /// the total; a measure of the periodic-surrogate tail.
  double tail_fraction = 0.0;
};

/// Recovers dbar b from d b by the multiplier xi / conj(xi), xi = xi_1 + i xi_2,
/// on a torus with 2x zero padding. Input must vanish on its 2-cell margin.
BeurlingResult beurling_recover_dbar_report(const GridField& db);
GridField beurling_recover_dbar(const GridField& db);

/// Velocity (i/(2 pi conj z)) * omega on the cell centers of a compact planar
/// grid; components "x", "y".
GridField biot_savart(const GridField& omega);

/// Velocity of a gridded vorticity at arbitrary points. Cells within
/// `near_cells` of the point are integrated exactly, the rest by midpoint.
VectorField biot_savart_field(const GridField& omega, int near_cells = 8, std::string name = "biot_savart");

/// Indicator of the disk |x| <= radius, cell-averaged with 8x8 subsamples, on
/// an n x n grid over [-half_width, half_width]^2.
GridField disk_vorticity(int n, double radius = 1.0, double half_width = 1.25);

/// sign(x1 x2) on [-1, 1]^2. Cell edges fall on the axes and on |x_i| = 1, so
/// the cell values are exact; n must be divisible by 32.
GridField quadrant_vorticity(int n);

/// R_j g with symbol -i xi_j / |xi| on a periodic grid ("f").
GridField riesz_transform(const GridField& g, int j, ZeroModePolicy policy = ZeroModePolicy::project_out);

struct HodgeReport {
  double relative_l2 = 0.0;     // |grad div u + div curl u - b|_2 / |b|_2
  double relative_linf = 0.0;
  double div_residual = 0.0;    // |lap div u - div b|_2 / |div b|_2
  double curl_residual = 0.0;   // |lap curl u - curl b|_2 / |curl b|_2
  double gradient_part = 0.0;   // |grad div u|_2 / |b|_2
  double rotational_part = 0.0; // |div curl u|_2 / |b|_2

  nlohmann::ordered_json to_json() const;
};

/// Solves lap u = b spectrally and measures b = grad div u + div curl u with
/// (curl u)_ij = d_j u_i - d_i u_j and (div C)_i = sum_j d_j C_ij.
HodgeReport hodge_check(const GridField& b, ZeroModePolicy policy = ZeroModePolicy::project_out);

/// Jacobian ("jxx" = d_x b_x, "jxy" = d_y b_x, ...), "div", curl matrix
/// ("cxy", ...), "s..", "a.." and in the plane "curl", "d_re", "d_im",
/// "dbar_re", "dbar_im". Periodic grids use spectral derivatives, compact
/// grids centered differences (one-sided at the edges).
GridField grid_derivative_bundle(const GridField& b);

}  // namespace reimann
