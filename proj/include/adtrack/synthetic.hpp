#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adtrack/sequence.hpp"

namespace adtrack {

/// How the per-frame speed evolves along the path.
enum class SpeedProfile { Constant, Accelerating, StopAndGo };

/// Line: straight motion along `velocity`. Orbit: circle around the frame
/// center starting at angle 0, traversed at the profile speed.
enum class MotionPath { Line, Orbit };

struct SyntheticSpec {
  std::string name = "synthetic";
  int frames = 60;
  int width = 320;
  int height = 240;
  double target_w = 40.0;
  double target_h = 40.0;
  /// Start center for line paths; defaults to the frame center.
  std::optional<Point2d> start;
  MotionPath path = MotionPath::Line;
  SpeedProfile profile = SpeedProfile::Constant;
  /// Line direction and initial speed in px/frame; orbits use its length.
  Velocity velocity{2.0, 0.0};
  /// Accelerating: speed gain per frame, capped at max_speed.
  double acceleration = 0.5;
  double max_speed = 1e9;
  /// Stop-and-go: frames moving, then frames at rest.
  int go_frames = 10;
  int stop_frames = 10;
  double orbit_radius = 80.0;
  bool blur = false;
  std::uint64_t seed = 1;
  /// Extra tags; "fast-motion" (some displacement >= 20 px) and
  /// "motion-blur" are added automatically.
  std::vector<std::string> attributes;
};

/// Seeded textured target over a static textured background. Throws
/// std::invalid_argument if the target leaves the frame entirely.
Sequence generate_synthetic(const SyntheticSpec& spec);

/// Ground-truth centers only, without rendering.
std::vector<BoundingBox> synthetic_trajectory(const SyntheticSpec& spec);

std::string to_string(SpeedProfile p);
std::string to_string(MotionPath p);
SpeedProfile parse_speed_profile(const std::string& text);
MotionPath parse_motion_path(const std::string& text);

/// Named scenario suites: "synth-fast", "synth-slow", "synth-blur", "synth-all".
std::vector<SyntheticSpec> synthetic_suite(const std::string& name, std::uint64_t seed = 1);
std::vector<std::string> synthetic_suite_names();

}  // namespace adtrack
