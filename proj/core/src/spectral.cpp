#include "reimann/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

namespace reimann {

namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct SpectralPlan::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

SpectralPlan::SpectralPlan(std::vector<int> shape, std::vector<double> spacing, ZeroModePolicy policy)
    : shape_(std::move(shape)), spacing_(std::move(spacing)), policy_(policy) {
  if (shape_.empty() || shape_.size() > 3) throw DomainError("SpectralPlan: dimension must be 1, 2 or 3");
  if (spacing_.size() != shape_.size()) throw DomainError("SpectralPlan: spacing does not match shape");
  size_ = 1;
  for (std::size_t a = 0; a < shape_.size(); ++a) {
    const int n = shape_[a];
    if (n < 2 || (n & (n - 1)) != 0) throw DomainError("SpectralPlan: sample counts must be powers of two");
    if (!(spacing_[a] > 0.0)) throw DomainError("SpectralPlan: spacing must be positive");
    size_ *= static_cast<std::size_t>(n);
  }
  plans_ = std::make_shared<Plans>();
  std::vector<Complex> scratch_in(size_), scratch_out(size_);
  std::lock_guard lock(planner_mutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans_->forward = fftw_plan_dft(dim(), shape_.data(), as_fftw(scratch_in.data()),
                                  as_fftw(scratch_out.data()), FFTW_FORWARD, flags);
  plans_->backward = fftw_plan_dft(dim(), shape_.data(), as_fftw(scratch_in.data()),
                                   as_fftw(scratch_out.data()), FFTW_BACKWARD, flags);
  if (!plans_->forward || !plans_->backward) throw Error("SpectralPlan: FFTW planning failed");
}

SpectralPlan SpectralPlan::for_grid(const GridField& g, ZeroModePolicy policy) {
  return SpectralPlan(g.shape(), g.spacing(), policy);
}

std::vector<Complex> SpectralPlan::forward(const std::vector<Complex>& data) const {
  if (data.size() != size_) throw DomainError("SpectralPlan: data size mismatch");
  std::vector<Complex> in = data;
  std::vector<Complex> out(size_);
  fftw_execute_dft(plans_->forward, as_fftw(in.data()), as_fftw(out.data()));
  return out;
}

std::vector<Complex> SpectralPlan::inverse(const std::vector<Complex>& spectrum) const {
  if (spectrum.size() != size_) throw DomainError("SpectralPlan: data size mismatch");
  std::vector<Complex> in = spectrum;
  std::vector<Complex> out(size_);
  fftw_execute_dft(plans_->backward, as_fftw(in.data()), as_fftw(out.data()));
  const double scale = 1.0 / static_cast<double>(size_);
  for (auto& v : out) v *= scale;
  return out;
}

double SpectralPlan::wavenumber(int axis, int index) const {
  const int n = shape_[axis];
  const int m = index < n / 2 ? index : index - n;
  return 2.0 * std::numbers::pi * m / (n * spacing_[axis]);
}

double SpectralPlan::derivative_wavenumber(int axis, int index) const {
  if (index == shape_[axis] / 2) return 0.0;
  return wavenumber(axis, index);
}

Vec SpectralPlan::wavevector(std::size_t flat, bool derivative) const {
  Vec k(dim());
  for (int a = dim(); a-- > 0;) {
    const int idx = static_cast<int>(flat % shape_[a]);
    flat /= shape_[a];
    k[a] = derivative ? derivative_wavenumber(a, idx) : wavenumber(a, idx);
  }
  return k;
}

std::vector<Complex> SpectralPlan::apply(const std::vector<Complex>& data, const Symbol& symbol,
                                         bool odd) const {
  auto spec = forward(data);
  spec[0] = 0.0;
  for (std::size_t f = 1; f < size_; ++f) spec[f] *= symbol(wavevector(f, odd));
  return inverse(spec);
}

std::vector<double> SpectralPlan::apply_real(const std::vector<double>& data, const Symbol& symbol) const {
  std::vector<Complex> c(data.begin(), data.end());
  const auto out = apply(c, symbol);
  std::vector<double> re(size_);
  for (std::size_t f = 0; f < size_; ++f) re[f] = out[f].real();
  return re;
}

std::vector<double> SpectralPlan::derivative(const std::vector<double>& data, int axis) const {
  if (axis < 0 || axis >= dim()) throw DomainError("SpectralPlan: axis out of range");
  return apply_real(data, [axis](const Vec& k) { return Complex(0.0, k[axis]); });
}

std::vector<double> SpectralPlan::zero_mode(const std::vector<double>& data) const {
  if (data.size() != size_) throw DomainError("SpectralPlan: data size mismatch");
  double mean = 0.0, scale = 0.0;
  for (double v : data) {
    mean += v;
    scale = std::max(scale, std::abs(v));
  }
  mean /= static_cast<double>(size_);
  if (policy_ == ZeroModePolicy::error && std::abs(mean) > 1e-12 * std::max(scale, 1e-300))
    throw DomainError("SpectralPlan: data has nonzero mean");
  std::vector<double> out(data);
  for (auto& v : out) v -= mean;
  return out;
}

}  // namespace reimann
