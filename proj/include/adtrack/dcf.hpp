#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "adtrack/features.hpp"
#include "adtrack/grid.hpp"

namespace adtrack {

/// Multi-channel correlation filter kept as separate numerator and
/// denominator so they can be blended frame by frame.
///
/// numerator[l] = conj(G) * F^l and denominator = sum_k conj(F^k) * F^k,
/// accumulated as convex combinations with rate eta. The regularizer lambda is
/// added only when the filter is applied.
struct FilterModel {
  std::vector<Spectrum> numerator;
  Spectrum denominator;
  double lambda = 0.01;
  double eta = 0.025;

  int depth() const { return static_cast<int>(numerator.size()); }
  GridSize grid_size() const { return denominator.size(); }

  friend bool operator==(const FilterModel&, const FilterModel&) = default;
};

struct ResponseMap {
  RealGrid values;
  GridIndex peak_pos;
  double peak_value = 0.0;
  double psr = 0.0;
};

enum class ResizeMethod { Spatial, Frequency };

/// Per-channel DFT of a feature map.
std::vector<Spectrum> feature_spectra(const FeatureMap& feat);

FilterModel train_init(const FeatureMap& feat, const Spectrum& label, double lambda, double eta);

/// A_t = (1-eta) A_{t-1} + eta conj(G) F_t, and likewise for B, blending
/// max(0, Re B_{t-1}) so a resized denominator is projected back.
FilterModel update(const FilterModel& model, const FeatureMap& feat, const Spectrum& label);

/// Correlation response y = idft2(sum_l conj(A^l) Z^l / (max(0, Re B) + lambda)).
/// The real part of the inverse is used: after a frequency-domain resize of an
/// even-sized grid the model may carry a one-sided Nyquist bin.
ResponseMap detect(const FilterModel& model, const FeatureMap& feat);

/// Peak-to-sidelobe ratio with an 11x11 exclusion window (wrapped around the
/// grid) centered on the peak. Returns 0 when fewer than two sidelobe cells
/// remain or their spread is zero.
double peak_to_sidelobe(const RealGrid& response, GridIndex peak);

/// Change the model grid, keeping the cell pitch of the learned filter.
/// Spatial: each channel goes to the spatial domain, is viewed with its origin
/// at the grid center, zero-padded or cropped with resize_grid_spatial and
/// transformed back. Frequency: the spectral samples of each channel are
/// trigonometrically interpolated onto the new frequency lattice (dft2,
/// resize_spectrum, inverse), which matches the spatial method up to where
/// an even grid's lag-N/2 term lands. The resized denominator may carry small
/// negative or complex bins; detect() and update() use max(0, Re B).
FilterModel resize_model(const FilterModel& model, GridSize new_size, ResizeMethod method);

/// Versioned little-endian binary snapshot; round-trips bit-exactly.
void save_model(std::ostream& out, const FilterModel& model);
FilterModel load_model(std::istream& in);
void save_model(const std::string& path, const FilterModel& model);
FilterModel load_model(const std::string& path);

}  // namespace adtrack
