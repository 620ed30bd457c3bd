#include "adtrack/features.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "adtrack/spectral.hpp"

namespace adtrack {

Image::Image(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels) {
  if (width < 1 || height < 1) throw std::invalid_argument("image extents must be >= 1");
  if (channels != 1 && channels != 3) throw std::invalid_argument("image must have 1 or 3 channels");
  values_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

Image to_gray(const Image& img) {
  if (img.channels() == 1) return img;
  Image out(img.width(), img.height(), 1);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      out.at(x, y) = 0.299f * img.at(x, y, 0) + 0.587f * img.at(x, y, 1) + 0.114f * img.at(x, y, 2);
    }
  }
  return out;
}

FeatureMap::FeatureMap(int rows, int cols, int depth) : rows_(rows), cols_(cols), depth_(depth) {
  if (rows < 1 || cols < 1 || depth < 1) throw std::invalid_argument("feature map extents must be >= 1");
  values_.assign(static_cast<std::size_t>(rows) * cols * depth, 0.0);
}

RealGrid FeatureMap::channel(int ch) const {
  RealGrid out(rows_, cols_);
  std::copy_n(values_.begin() + static_cast<std::ptrdiff_t>(ch) * rows_ * cols_, out.count(),
              out.values().begin());
  return out;
}

void FeatureMap::set_channel(int ch, const RealGrid& grid) {
  if (grid.rows() != rows_ || grid.cols() != cols_) throw std::invalid_argument("channel size mismatch");
  std::copy(grid.values().begin(), grid.values().end(),
            values_.begin() + static_cast<std::ptrdiff_t>(ch) * rows_ * cols_);
}

Image extract_patch(const Image& img, Point2d center, int win_w, int win_h) {
  if (!std::isfinite(center.x) || !std::isfinite(center.y)) {
    throw std::invalid_argument("extract_patch: non-finite center");
  }
  Image out(win_w, win_h, img.channels());
  const int x0 = static_cast<int>(std::lround(center.x)) - win_w / 2;
  const int y0 = static_cast<int>(std::lround(center.y)) - win_h / 2;
  for (int y = 0; y < win_h; ++y) {
    const int sy = std::clamp(y0 + y, 0, img.height() - 1);
    for (int x = 0; x < win_w; ++x) {
      const int sx = std::clamp(x0 + x, 0, img.width() - 1);
      for (int ch = 0; ch < img.channels(); ++ch) out.at(x, y, ch) = img.at(sx, sy, ch);
    }
  }
  return out;
}

Image extract_patch_resampled(const Image& img, Point2d center, double win_w, double win_h,
                              int out_w, int out_h) {
  if (!std::isfinite(center.x) || !std::isfinite(center.y)) {
    throw std::invalid_argument("extract_patch_resampled: non-finite center");
  }
  Image out(out_w, out_h, img.channels());
  const double sx = win_w / out_w;
  const double sy = win_h / out_h;
  const double cx = std::round(center.x);
  const double cy = std::round(center.y);
  for (int y = 0; y < out_h; ++y) {
    const double fy = std::clamp(cy + (y - out_h / 2) * sy, 0.0, img.height() - 1.0);
    const int y_lo = static_cast<int>(fy);
    const int y_hi = std::min(y_lo + 1, img.height() - 1);
    const double ty = fy - y_lo;
    for (int x = 0; x < out_w; ++x) {
      const double fx = std::clamp(cx + (x - out_w / 2) * sx, 0.0, img.width() - 1.0);
      const int x_lo = static_cast<int>(fx);
      const int x_hi = std::min(x_lo + 1, img.width() - 1);
      const double tx = fx - x_lo;
      for (int ch = 0; ch < img.channels(); ++ch) {
        const double top = (1 - tx) * img.at(x_lo, y_lo, ch) + tx * img.at(x_hi, y_lo, ch);
        const double bot = (1 - tx) * img.at(x_lo, y_hi, ch) + tx * img.at(x_hi, y_hi, ch);
        out.at(x, y, ch) = static_cast<float>((1 - ty) * top + ty * bot);
      }
    }
  }
  return out;
}

namespace {

constexpr int kSigned = 18;
constexpr int kUnsigned = 9;
constexpr double kTruncate = 0.2;
constexpr double kNormEps = 1e-9;
// 1 / sqrt(18): texture channels average the truncated responses.
constexpr double kTextureWeight = 0.2357;

struct OrientationBasis {
  std::array<double, kUnsigned> cos_t{};
  std::array<double, kUnsigned> sin_t{};
  OrientationBasis() {
    for (int o = 0; o < kUnsigned; ++o) {
      cos_t[o] = std::cos(o * std::numbers::pi / kUnsigned);
      sin_t[o] = std::sin(o * std::numbers::pi / kUnsigned);
    }
  }
};

}  // namespace

FeatureMap hog(const Image& patch, int cell) {
  if (cell < 1) throw std::invalid_argument("hog: cell must be >= 1");
  const int rows = patch.height() / cell;
  const int cols = patch.width() / cell;
  if (rows < 2 || cols < 2) {
    throw std::invalid_argument("hog: patch " + std::to_string(patch.width()) + "x" +
                                std::to_string(patch.height()) + " smaller than 2x2 cells of " +
                                std::to_string(cell) + " px");
  }
  static const OrientationBasis basis;
  const Image gray = to_gray(patch);
  const int w = gray.width();
  const int h = gray.height();

  std::vector<double> hist(static_cast<std::size_t>(rows) * cols * kSigned, 0.0);
  for (int y = 0; y < rows * cell; ++y) {
    const int yp = std::min(y + 1, h - 1);
    const int ym = std::max(y - 1, 0);
    for (int x = 0; x < cols * cell; ++x) {
      const double dx = static_cast<double>(gray.at(std::min(x + 1, w - 1), y)) - gray.at(std::max(x - 1, 0), y);
      const double dy = static_cast<double>(gray.at(x, yp)) - gray.at(x, ym);
      const double mag = std::sqrt(dx * dx + dy * dy);
      if (mag == 0.0) continue;
      int best = 0;
      double best_dot = 0.0;
      for (int o = 0; o < kUnsigned; ++o) {
        const double dot = basis.cos_t[o] * dx + basis.sin_t[o] * dy;
        if (dot > best_dot) {
          best_dot = dot;
          best = o;
        } else if (-dot > best_dot) {
          best_dot = -dot;
          best = o + kUnsigned;
        }
      }
      hist[(static_cast<std::size_t>(y / cell) * cols + x / cell) * kSigned + best] += mag;
    }
  }

  std::vector<double> energy(static_cast<std::size_t>(rows) * cols, 0.0);
  for (std::size_t i = 0; i < energy.size(); ++i) {
    const double* hc = &hist[i * kSigned];
    for (int o = 0; o < kUnsigned; ++o) {
      const double s = hc[o] + hc[o + kUnsigned];
      energy[i] += s * s;
    }
  }
  auto energy_at = [&](int r, int c) {
    r = std::clamp(r, 0, rows - 1);
    c = std::clamp(c, 0, cols - 1);
    return energy[static_cast<std::size_t>(r) * cols + c];
  };
  auto block = [&](int r0, int c0) {
    return 1.0 / std::sqrt(energy_at(r0, c0) + energy_at(r0, c0 + 1) + energy_at(r0 + 1, c0) +
                           energy_at(r0 + 1, c0 + 1) + kNormEps);
  };

  FeatureMap out(rows, cols, kHogChannels);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const std::array<double, 4> norms = {block(r, c), block(r - 1, c), block(r, c - 1),
                                           block(r - 1, c - 1)};
      const double* hc = &hist[(static_cast<std::size_t>(r) * cols + c) * kSigned];
      std::array<double, 4> texture{};
      for (int o = 0; o < kSigned; ++o) {
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) {
          const double v = std::min(hc[o] * norms[k], kTruncate);
          acc += v;
          texture[k] += v;
        }
        out(o, r, c) = 0.5 * acc;
      }
      for (int o = 0; o < kUnsigned; ++o) {
        const double s = hc[o] + hc[o + kUnsigned];
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) acc += std::min(s * norms[k], kTruncate);
        out(kSigned + o, r, c) = 0.5 * acc;
      }
      for (int k = 0; k < 4; ++k) out(kSigned + kUnsigned + k, r, c) = kTextureWeight * texture[k];
    }
  }
  return out;
}

int feature_depth(const FeatureConfig& cfg) { return kHogChannels + (cfg.gray_channel ? 1 : 0); }

FeatureMap featurize(const Image& patch, const FeatureConfig& cfg) {
  const FeatureMap hog_map = hog(patch, cfg.cell);
  const int rows = hog_map.rows();
  const int cols = hog_map.cols();
  FeatureMap out(rows, cols, feature_depth(cfg));
  std::copy(hog_map.values().begin(), hog_map.values().end(), out.values().begin());

  if (cfg.gray_channel) {
    const Image gray = to_gray(patch);
    RealGrid cells(rows, cols);
    const double inv_area = 1.0 / (cfg.cell * cfg.cell);
    double mean = 0.0;
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        double acc = 0.0;
        for (int y = r * cfg.cell; y < (r + 1) * cfg.cell; ++y) {
          for (int x = c * cfg.cell; x < (c + 1) * cfg.cell; ++x) acc += gray.at(x, y);
        }
        cells(r, c) = acc * inv_area;
        mean += cells(r, c);
      }
    }
    mean /= cells.count();
    for (auto& v : cells.values()) v -= mean;
    out.set_channel(kHogChannels, cells);
  }

  const RealGrid window = hann_window(rows, cols);
  for (int ch = 0; ch < out.depth(); ++ch) {
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) out(ch, r, c) *= window(r, c);
    }
  }
  return out;
}

}  // namespace adtrack
