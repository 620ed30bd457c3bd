#pragma once

#include <cstddef>
#include <vector>

#include "adtrack/grid.hpp"

namespace adtrack {

/// Interleaved float image, row-major, intensities in [0,1].
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, float fill = 0.0f);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  bool empty() const { return values_.empty(); }

  float& at(int x, int y, int ch = 0) {
    return values_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + ch];
  }
  float at(int x, int y, int ch = 0) const {
    return values_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + ch];
  }

  std::vector<float>& values() { return values_; }
  const std::vector<float>& values() const { return values_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<float> values_;
};

/// Luma conversion (0.299, 0.587, 0.114) for 3-channel input; 1-channel input is copied.
Image to_gray(const Image& img);

/// Subpixel position in image coordinates; x is the column, y the row.
struct Point2d {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2d&, const Point2d&) = default;
};

/// Channel-major real tensor: depth slices of rows x cols.
class FeatureMap {
 public:
  FeatureMap() = default;
  FeatureMap(int rows, int cols, int depth);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int depth() const { return depth_; }
  GridSize grid_size() const { return {rows_, cols_}; }

  double& operator()(int ch, int r, int c) {
    return values_[(static_cast<std::size_t>(ch) * rows_ + r) * cols_ + c];
  }
  double operator()(int ch, int r, int c) const {
    return values_[(static_cast<std::size_t>(ch) * rows_ + r) * cols_ + c];
  }

  RealGrid channel(int ch) const;
  void set_channel(int ch, const RealGrid& grid);

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  int depth_ = 0;
  std::vector<double> values_;
};

/// Number of channels produced by hog().
inline constexpr int kHogChannels = 31;

struct FeatureConfig {
  int cell = 4;
  bool gray_channel = false;
};

/// win_h x win_w patch centered at round(center); out-of-frame pixels
/// replicate the nearest border pixel. Throws on a non-finite center.
Image extract_patch(const Image& img, Point2d center, int win_w, int win_h);

/// Patch of out_w x out_h samples covering a win_w x win_h window centered at
/// `center`, bilinearly resampled with border replication. Used when the
/// window is pre-scaled to bound the feature-grid area.
Image extract_patch_resampled(const Image& img, Point2d center, double win_w, double win_h,
                              int out_w, int out_h);

/// 31-channel cell HOG: 18 contrast-sensitive orientations, 9
/// contrast-insensitive orientations and 4 texture-energy channels on a
/// floor(h/cell) x floor(w/cell) grid. Throws if the patch is smaller than
/// 2x2 cells.
FeatureMap hog(const Image& patch, int cell);

/// HOG channels (plus the optional mean-subtracted cell-averaged gray channel),
/// each multiplied by the Hann window of the feature grid.
FeatureMap featurize(const Image& patch, const FeatureConfig& cfg);

/// Feature depth featurize() produces for `cfg`.
int feature_depth(const FeatureConfig& cfg);

}  // namespace adtrack
