#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adtrack/controller.hpp"
#include "adtrack/dcf.hpp"
#include "adtrack/features.hpp"
#include "adtrack/motion.hpp"

namespace adtrack {

/// Axis-aligned box given by its center and extent, in image pixels.
struct BoundingBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  Point2d center() const { return {cx, cy}; }
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

struct TrackerConfig {
  /// Padding per level; window = target * (1 + padding).
  std::array<double, 3> paddings = {1.0, 1.8, 2.6};
  ThresholdConfig thresholds;
  /// When false the level stays at S1 (plain fixed-area DCF).
  bool adaptive = true;
  double lambda = 0.01;
  double eta = 0.025;
  int fit_order = 2;
  std::size_t history = 5;
  ResizeMethod resize_method = ResizeMethod::Frequency;
  FeatureConfig features;
  double sigma_factor = 0.1;
  /// Minimum PSR required to apply a level change; disabled when empty.
  std::optional<double> confidence_gate;
  /// Upper bound on feature cells of the largest window; larger windows are
  /// sampled at a coarser pixel pitch.
  int max_cells = 10000;
};

/// Throws std::invalid_argument on an inconsistent configuration.
void validate(const TrackerConfig& cfg);

/// Named parameter sets: "dcf_sasa", "dsst_sasa", "samf_sasa".
TrackerConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// Search window at one level: feature grid plus its extent in frame pixels.
struct Window {
  GridSize cells;
  double width = 0.0;
  double height = 0.0;
};

struct FrameDiagnostics {
  int frame_index = 0;
  BoundingBox box;
  double zeta = 0.0;
  Level level = Level::S1;
  double psr = 0.0;
  double peak = 0.0;
  bool resized = false;
  bool low_confidence = false;
  double ms = 0.0;
};

struct TrackerState {
  TrackerConfig config;
  FilterModel model;
  BoundingBox position;
  InitialSize initial_size;
  MotionHistory history;
  SearchAreaState area;
  int frame_index = 0;
  /// Frame pixels per feature pixel (1 unless max_cells forces coarser sampling).
  double pixel_pitch = 1.0;
  Window window;
  int frame_width = 0;
  int frame_height = 0;
};

/// Translation-only correlation filter tracker whose search window follows
/// the predicted target speed.
class Tracker {
 public:
  /// Trains the first filter on `frame` around `box` at level S1.
  Tracker(const Image& frame, const BoundingBox& box, const TrackerConfig& cfg);

  /// Localizes in `frame`, updates the level, resizes and updates the filter.
  FrameDiagnostics track(const Image& frame);

  const TrackerState& state() const { return state_; }
  BoundingBox position() const { return state_.position; }
  Window window_for(Level level) const;

 private:
  FeatureMap features_at(const Image& frame, Point2d center, const Window& window) const;
  const Spectrum& label_for(GridSize cells);

  TrackerState state_;
  GridSize label_size_;
  Spectrum label_;
};

struct SequenceRun {
  std::vector<BoundingBox> boxes;
  std::vector<FrameDiagnostics> diagnostics;
};

using FrameProvider = std::function<Image(std::size_t)>;

/// Runs one tracker over `count` frames. The first box is `init_box`.
SequenceRun run_sequence(std::size_t count, const FrameProvider& frame_at, const BoundingBox& init_box,
                         const TrackerConfig& cfg);
SequenceRun run_sequence(std::span<const Image> frames, const BoundingBox& init_box, const TrackerConfig& cfg);

}  // namespace adtrack
