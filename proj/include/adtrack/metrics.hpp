#pragma once

#include <span>
#include <vector>

#include "adtrack/tracker.hpp"

namespace adtrack {

/// Center-error thresholds 0..50 px (51 samples) and IoU thresholds
/// 0, 0.05, ..., 1 (21 samples).
inline constexpr int kPrecisionSamples = 51;
inline constexpr int kSuccessSamples = 21;
double precision_threshold(int i);
double success_threshold(int i);

double center_error(const BoundingBox& a, const BoundingBox& b);
double iou(const BoundingBox& a, const BoundingBox& b);

struct EvalResult {
  /// Fraction of frames with center error <= threshold.
  std::vector<double> precision;
  /// Fraction of frames with IoU >= threshold.
  std::vector<double> success;
  double precision_at_20 = 0.0;
  /// Mean of the 21 success samples.
  double auc = 0.0;
  double mean_fps = 0.0;
  std::size_t frames = 0;
};

EvalResult evaluate(std::span<const BoundingBox> predictions, std::span<const BoundingBox> groundtruth);

/// Sample-wise mean of several results' curves; fps averaged as well.
EvalResult average(std::span<const EvalResult> results);

}  // namespace adtrack
