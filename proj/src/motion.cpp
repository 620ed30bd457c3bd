#include "adtrack/motion.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace adtrack {

double polyfit_extrapolate(std::span<const double> samples, int order) {
  if (samples.empty()) throw std::invalid_argument("polyfit_extrapolate: no samples");
  if (order < 0) throw std::invalid_argument("polyfit_extrapolate: order must be >= 0");
  for (double s : samples) {
    if (!std::isfinite(s)) throw std::invalid_argument("polyfit_extrapolate: non-finite sample");
  }
  const auto n = static_cast<int>(samples.size());
  const int degree = std::min(order, n - 1);

  Eigen::MatrixXd vander(n, degree + 1);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    const double idx = i + 1;
    double p = 1.0;
    for (int j = 0; j <= degree; ++j) {
      vander(i, j) = p;
      p *= idx;
    }
    rhs(i) = samples[i];
  }
  const Eigen::VectorXd coeffs = vander.householderQr().solve(rhs);

  // Horner at idx = n + 1.
  const double at = n + 1;
  double value = 0.0;
  for (int j = degree; j >= 0; --j) value = value * at + coeffs(j);
  return value;
}

MotionHistory::MotionHistory(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("MotionHistory: capacity must be >= 1");
}

void MotionHistory::push(Point2d position) {
  if (last_) {
    vx_.push_back(position.x - last_->x);
    vy_.push_back(position.y - last_->y);
    if (vx_.size() > capacity_) {
      vx_.pop_front();
      vy_.pop_front();
    }
  }
  last_ = position;
}

Velocity predict_velocity(const MotionHistory& hist, int order) {
  if (hist.size() == 0) return {};
  const std::vector<double> vx(hist.vx().begin(), hist.vx().end());
  const std::vector<double> vy(hist.vy().begin(), hist.vy().end());
  return {polyfit_extrapolate(vx, order), polyfit_extrapolate(vy, order)};
}

double criterion(Velocity v, InitialSize init) {
  if (!(init.width > 0.0 && init.height > 0.0)) {
    throw std::invalid_argument("criterion: initial size must be positive");
  }
  return std::hypot(v.x / init.width, v.y / init.height);
}

}  // namespace adtrack
