#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "reimann/grid.hpp"

namespace reimann {

enum class ZeroModePolicy { project_out, error };

/// FFT plan for one periodic box shape. Plans are immutable after
/// construction and may be shared between threads.
///
/// Wavenumbers are 2 pi m / (N h) with m in [-N/2, N/2). Odd symbols (first
/// derivatives, Riesz transforms) use derivative_wavenumber, which is zero at
/// the Nyquist index so real data maps to real data.
class SpectralPlan {
 public:
  using Symbol = std::function<Complex(const Vec& k)>;

  SpectralPlan(std::vector<int> shape, std::vector<double> spacing,
               ZeroModePolicy policy = ZeroModePolicy::project_out);
  static SpectralPlan for_grid(const GridField& g, ZeroModePolicy policy = ZeroModePolicy::project_out);

  const std::vector<int>& shape() const { return shape_; }
  const std::vector<double>& spacing() const { return spacing_; }
  ZeroModePolicy policy() const { return policy_; }
  std::size_t size() const { return size_; }
  int dim() const { return static_cast<int>(shape_.size()); }

  std::vector<Complex> forward(const std::vector<Complex>& data) const;
  /// Inverse transform including the 1/N normalization.
  std::vector<Complex> inverse(const std::vector<Complex>& spectrum) const;

  double wavenumber(int axis, int index) const;
  double derivative_wavenumber(int axis, int index) const;
  Vec wavevector(std::size_t flat, bool derivative) const;

  /// Multiplies the spectrum of `data` by symbol(k); the zero mode is mapped
  /// to 0. `odd` selects the derivative wavevector (Nyquist entries zeroed).
  std::vector<Complex> apply(const std::vector<Complex>& data, const Symbol& symbol, bool odd = true) const;
  /// Real part of apply() on real input.
  std::vector<double> apply_real(const std::vector<double>& data, const Symbol& symbol) const;

  /// Spectral partial derivative along `axis`.
  std::vector<double> derivative(const std::vector<double>& data, int axis) const;

  /// Removes the mean under project_out; under error throws DomainError when
  /// the mean exceeds 1e-12 of the data scale.
  std::vector<double> zero_mode(const std::vector<double>& data) const;

 private:
  struct Plans;
  std::vector<int> shape_;
  std::vector<double> spacing_;
  ZeroModePolicy policy_;
  std::size_t size_ = 0;
  std::shared_ptr<Plans> plans_;
};

}  // namespace reimann
