#include "adtrack/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace adtrack {
namespace {

// FFTW's planner is not thread-safe but fftw_execute_dft on an existing plan
// is, so plans are created once per (rows, cols, sign) under a lock and then
// executed on caller-owned buffers.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int rows, int cols, int sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(rows, cols, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<Complex> in(static_cast<std::size_t>(rows) * cols);
    std::vector<Complex> out(in.size());
    fftw_plan plan = fftw_plan_dft_2d(rows, cols, reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()), sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

Spectrum transform(const Spectrum& in, int sign) {
  Spectrum out(in.size());
  fftw_plan plan = plan_cache().get(in.rows(), in.cols(), sign);
  // fftw_execute_dft does not modify the input of an out-of-place plan.
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

Spectrum to_complex(const RealGrid& grid) {
  Spectrum out(grid.size());
  for (std::size_t i = 0; i < grid.count(); ++i) out[i] = Complex(grid[i], 0.0);
  return out;
}

RealGrid real_part(const Spectrum& spec) {
  RealGrid out(spec.size());
  for (std::size_t i = 0; i < spec.count(); ++i) out[i] = spec[i].real();
  return out;
}

Spectrum dft2(const RealGrid& grid) { return transform(to_complex(grid), FFTW_FORWARD); }

Spectrum dft2(const Spectrum& grid) { return transform(grid, FFTW_FORWARD); }

Spectrum idft2_complex(const Spectrum& spec) {
  Spectrum out = transform(spec, FFTW_BACKWARD);
  const double norm = 1.0 / static_cast<double>(spec.count());
  for (auto& v : out.values()) v *= norm;
  return out;
}

RealGrid idft2(const Spectrum& spec) {
  const Spectrum full = idft2_complex(spec);
  double max_mag = 0.0;
  double max_imag = 0.0;
  for (const auto& v : full.values()) {
    max_mag = std::max(max_mag, std::abs(v));
    max_imag = std::max(max_imag, std::abs(v.imag()));
  }
  if (max_imag > 1e-6 * max_mag) {
    throw std::domain_error("idft2: spectrum is not conjugate-symmetric (imaginary residue " +
                            std::to_string(max_imag) + " vs magnitude " + std::to_string(max_mag) +
                            ")");
  }
  return real_part(full);
}

RealGrid gaussian_label(int rows, int cols, double sigma, GridIndex peak_at) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_label: sigma must be > 0");
  if (peak_at.row < 0 || peak_at.row >= rows || peak_at.col < 0 || peak_at.col >= cols) {
    throw std::invalid_argument("gaussian_label: peak outside grid");
  }
  RealGrid out(rows, cols);
  const double denom = 2.0 * sigma * sigma;
  for (int r = 0; r < rows; ++r) {
    int dr = std::abs(r - peak_at.row);
    dr = std::min(dr, rows - dr);
    for (int c = 0; c < cols; ++c) {
      int dc = std::abs(c - peak_at.col);
      dc = std::min(dc, cols - dc);
      out(r, c) = std::exp(-static_cast<double>(dr * dr + dc * dc) / denom);
    }
  }
  return out;
}

namespace {
std::vector<double> hann_1d(int n) {
  std::vector<double> w(static_cast<std::size_t>(n), 1.0);
  if (n == 1) return w;
  for (int i = 0; i < n; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (n - 1)));
  }
  // Pin the endpoints; cos(2*pi) is not exactly 1 in floating point.
  w.front() = 0.0;
  w.back() = 0.0;
  return w;
}
}  // namespace

RealGrid hann_window(int rows, int cols) {
  const auto wr = hann_1d(rows);
  const auto wc = hann_1d(cols);
  RealGrid out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) out(r, c) = wr[r] * wc[c];
  }
  return out;
}

Spectrum resize_spectrum(const Spectrum& spec, int new_rows, int new_cols) {
  if (spec.rows() == new_rows && spec.cols() == new_cols) return spec;
  Spectrum out = ifftshift(resize_grid_spatial(fftshift(spec), new_rows, new_cols));
  const double scale = static_cast<double>(new_rows) * new_cols / static_cast<double>(spec.count());
  for (auto& v : out.values()) v *= scale;
  return out;
}

}  // namespace adtrack
