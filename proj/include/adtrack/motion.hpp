#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <span>

#include "adtrack/features.hpp"

namespace adtrack {

/// Least-squares fit of sum_i a_i * idx^i over idx = 1..n, evaluated at n+1.
/// The degree drops to n-1 when n <= order. Throws on empty or non-finite input.
double polyfit_extrapolate(std::span<const double> samples, int order);

struct Velocity {
  double x = 0.0;
  double y = 0.0;
};

/// Target size at initialization; the criterion normalizes by it.
struct InitialSize {
  double width = 0.0;
  double height = 0.0;
};

/// Last-n per-frame displacements of the target center.
class MotionHistory {
 public:
  explicit MotionHistory(std::size_t capacity = 5);

  /// Appends the position for the next frame; a velocity is recorded once a
  /// previous position exists.
  void push(Point2d position);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return vx_.size(); }
  const std::deque<double>& vx() const { return vx_; }
  const std::deque<double>& vy() const { return vy_; }
  std::optional<Point2d> last_position() const { return last_; }

 private:
  std::size_t capacity_;
  std::optional<Point2d> last_;
  std::deque<double> vx_;
  std::deque<double> vy_;
};

/// Per-axis extrapolated velocity for the coming frame; (0,0) with no history.
Velocity predict_velocity(const MotionHistory& hist, int order);

/// zeta = sqrt((vx / width)^2 + (vy / height)^2).
double criterion(Velocity v, InitialSize init);

}  // namespace adtrack
