#pragma once

#include "adtrack/grid.hpp"

namespace adtrack {

/// Unnormalized forward 2-D DFT. Bin (0,0) holds the sum of all values.
Spectrum dft2(const RealGrid& grid);
Spectrum dft2(const Spectrum& grid);

/// Inverse 2-D DFT with 1/(rows*cols) normalization, returning the real part.
/// Throws std::domain_error if the imaginary residue exceeds 1e-6 of the
/// largest output magnitude.
RealGrid idft2(const Spectrum& spec);

/// Inverse 2-D DFT with 1/(rows*cols) normalization, complex result.
Spectrum idft2_complex(const Spectrum& spec);

/// Bin-wise real part.
RealGrid real_part(const Spectrum& spec);
Spectrum to_complex(const RealGrid& grid);

/// Gaussian with value 1 at `peak_at` and exp(-r^2 / (2 sigma^2)) at wrapped
/// (circular) distance r elsewhere.
RealGrid gaussian_label(int rows, int cols, double sigma, GridIndex peak_at);

/// Separable raised-cosine window, 0 on the border ring. A 1-sample axis is 1.
RealGrid hann_window(int rows, int cols);

/// Circular shift moving index (0,0) to (rows/2, cols/2).
template <class T>
Grid<T> fftshift(const Grid<T>& grid) {
  Grid<T> out(grid.size());
  const int dr = grid.rows() / 2;
  const int dc = grid.cols() / 2;
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) {
      out((r + dr) % grid.rows(), (c + dc) % grid.cols()) = grid(r, c);
    }
  }
  return out;
}

/// Inverse of fftshift.
template <class T>
Grid<T> ifftshift(const Grid<T>& grid) {
  Grid<T> out(grid.size());
  const int dr = grid.rows() / 2;
  const int dc = grid.cols() / 2;
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) {
      out(r, c) = grid((r + dr) % grid.rows(), (c + dc) % grid.cols());
    }
  }
  return out;
}

/// Places `grid` centered in a new extent: zero-padding around the border
/// when growing, central crop when shrinking. The source cell (rows/2, cols/2)
/// lands on (new_rows/2, new_cols/2), so pad-then-crop is the identity.
template <class T>
Grid<T> resize_grid_spatial(const Grid<T>& grid, int new_rows, int new_cols) {
  Grid<T> out(new_rows, new_cols);
  const int off_r = new_rows / 2 - grid.rows() / 2;
  const int off_c = new_cols / 2 - grid.cols() / 2;
  for (int r = 0; r < grid.rows(); ++r) {
    const int rr = r + off_r;
    if (rr < 0 || rr >= new_rows) continue;
    for (int c = 0; c < grid.cols(); ++c) {
      const int cc = c + off_c;
      if (cc < 0 || cc >= new_cols) continue;
      out(rr, cc) = grid(r, c);
    }
  }
  return out;
}

/// Trigonometric-interpolation resize: the returned spectrum is the DFT of the
/// original signal's trigonometric interpolant sampled on a new_rows x
/// new_cols grid over the same period. Implemented as centered zero-pad/crop
/// of the spectrum scaled by (new_rows*new_cols)/(rows*cols). Even-size
/// Nyquist bins are moved whole, not split. Same size returns the input.
Spectrum resize_spectrum(const Spectrum& spec, int new_rows, int new_cols);

}  // namespace adtrack
