#include "adtrack/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace adtrack {

double precision_threshold(int i) { return static_cast<double>(i); }
double success_threshold(int i) { return i / 20.0; }

double center_error(const BoundingBox& a, const BoundingBox& b) { return std::hypot(a.cx - b.cx, a.cy - b.cy); }

double iou(const BoundingBox& a, const BoundingBox& b) {
  // Areas come from the same rounded edges as the overlap, so iou(a, a) is
  // exactly 1.
  const double al = a.cx - a.w / 2, ar = a.cx + a.w / 2, at = a.cy - a.h / 2, ab = a.cy + a.h / 2;
  const double bl = b.cx - b.w / 2, br = b.cx + b.w / 2, bt = b.cy - b.h / 2, bb = b.cy + b.h / 2;
  const double ix = std::min(ar, br) - std::max(al, bl);
  const double iy = std::min(ab, bb) - std::max(at, bt);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  const double uni = (ar - al) * (ab - at) + (br - bl) * (bb - bt) - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

EvalResult evaluate(std::span<const BoundingBox> predictions, std::span<const BoundingBox> groundtruth) {
  if (predictions.size() != groundtruth.size()) {
    throw std::invalid_argument("evaluate: " + std::to_string(predictions.size()) + " predictions for " +
                                std::to_string(groundtruth.size()) + " ground-truth boxes");
  }
  if (predictions.empty()) throw std::invalid_argument("evaluate: empty input");
  EvalResult out;
  out.frames = predictions.size();
  out.precision.assign(kPrecisionSamples, 0.0);
  out.success.assign(kSuccessSamples, 0.0);
  for (std::size_t f = 0; f < predictions.size(); ++f) {
    const double err = center_error(predictions[f], groundtruth[f]);
    const double overlap = iou(predictions[f], groundtruth[f]);
    for (int i = 0; i < kPrecisionSamples; ++i) {
      if (err <= precision_threshold(i)) out.precision[i] += 1.0;
    }
    for (int i = 0; i < kSuccessSamples; ++i) {
      if (overlap >= success_threshold(i)) out.success[i] += 1.0;
    }
  }
  const double n = static_cast<double>(predictions.size());
  for (auto& v : out.precision) v /= n;
  for (auto& v : out.success) v /= n;
  out.precision_at_20 = out.precision[20];
  double sum = 0.0;
  for (double v : out.success) sum += v;
  out.auc = sum / kSuccessSamples;
  return out;
}

EvalResult average(std::span<const EvalResult> results) {
  if (results.empty()) throw std::invalid_argument("average: no results");
  EvalResult out;
  out.precision.assign(kPrecisionSamples, 0.0);
  out.success.assign(kSuccessSamples, 0.0);
  for (const auto& r : results) {
    for (int i = 0; i < kPrecisionSamples; ++i) out.precision[i] += r.precision[i];
    for (int i = 0; i < kSuccessSamples; ++i) out.success[i] += r.success[i];
    out.mean_fps += r.mean_fps;
    out.frames += r.frames;
  }
  const double n = static_cast<double>(results.size());
  for (auto& v : out.precision) v /= n;
  for (auto& v : out.success) v /= n;
  out.mean_fps /= n;
  out.precision_at_20 = out.precision[20];
  double sum = 0.0;
  for (double v : out.success) sum += v;
  out.auc = sum / kSuccessSamples;
  return out;
}

}  // namespace adtrack
