#include "adtrack/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace adtrack {
namespace {

// std::uniform_real_distribution is implementation-defined; this keeps
// generated pixels identical across standard libraries.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Bilinear value noise: random lattice values every `spacing` pixels.
class ValueNoise {
 public:
  ValueNoise(int width, int height, double spacing, std::mt19937_64& rng)
      : spacing_(spacing),
        nx_(static_cast<int>(std::ceil(width / spacing)) + 2),
        ny_(static_cast<int>(std::ceil(height / spacing)) + 2),
        lattice_(static_cast<std::size_t>(nx_) * ny_) {
    for (auto& v : lattice_) v = unit_uniform(rng);
  }

  double operator()(double x, double y) const {
    const double gx = std::clamp(x / spacing_, 0.0, nx_ - 1.000001);
    const double gy = std::clamp(y / spacing_, 0.0, ny_ - 1.000001);
    const int ix = static_cast<int>(gx);
    const int iy = static_cast<int>(gy);
    const double tx = smooth(gx - ix);
    const double ty = smooth(gy - iy);
    const double top = (1 - tx) * at(ix, iy) + tx * at(ix + 1, iy);
    const double bot = (1 - tx) * at(ix, iy + 1) + tx * at(ix + 1, iy + 1);
    return (1 - ty) * top + ty * bot;
  }

 private:
  static double smooth(double t) { return t * t * (3.0 - 2.0 * t); }
  double at(int x, int y) const { return lattice_[static_cast<std::size_t>(y) * nx_ + x]; }

  double spacing_;
  int nx_;
  int ny_;
  std::vector<double> lattice_;
};

float quantize(double v) { return static_cast<float>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0) / 255.0); }

double speed_at(const SyntheticSpec& s, int t) {
  const double base = std::hypot(s.velocity.x, s.velocity.y);
  switch (s.profile) {
    case SpeedProfile::Constant: return base;
    case SpeedProfile::Accelerating: return std::min(s.max_speed, base + s.acceleration * (t - 1));
    case SpeedProfile::StopAndGo: {
      const int period = std::max(1, s.go_frames + s.stop_frames);
      return ((t - 1) % period) < s.go_frames ? base : 0.0;
    }
  }
  return base;
}

void check_spec(const SyntheticSpec& s) {
  if (s.frames < 1) throw std::invalid_argument("synthetic: frames must be >= 1");
  if (s.width < 8 || s.height < 8) throw std::invalid_argument("synthetic: frame too small");
  if (!(s.target_w >= 1.0 && s.target_h >= 1.0)) throw std::invalid_argument("synthetic: target must be >= 1 px");
  if (s.path == MotionPath::Orbit && !(s.orbit_radius > 0.0)) {
    throw std::invalid_argument("synthetic: orbit radius must be > 0");
  }
  if (s.profile == SpeedProfile::StopAndGo && (s.go_frames < 0 || s.stop_frames < 0)) {
    throw std::invalid_argument("synthetic: stop-and-go phases must be >= 0");
  }
}

// Fraction of the pixel centered at integer coordinate p covered by [lo, hi].
double coverage_1d(double p, double lo, double hi) {
  return std::clamp(std::min(p + 0.5, hi) - std::max(p - 0.5, lo), 0.0, 1.0);
}

}  // namespace

std::vector<BoundingBox> synthetic_trajectory(const SyntheticSpec& spec) {
  check_spec(spec);
  std::vector<BoundingBox> boxes;
  boxes.reserve(spec.frames);
  const Point2d frame_center{(spec.width - 1) / 2.0, (spec.height - 1) / 2.0};

  Point2d pos = spec.start.value_or(frame_center);
  double angle = 0.0;
  if (spec.path == MotionPath::Orbit) pos = {frame_center.x + spec.orbit_radius, frame_center.y};
  const double base = std::hypot(spec.velocity.x, spec.velocity.y);
  const Point2d dir = base > 0 ? Point2d{spec.velocity.x / base, spec.velocity.y / base} : Point2d{0, 0};

  for (int t = 0; t < spec.frames; ++t) {
    if (t > 0) {
      const double s = speed_at(spec, t);
      if (spec.path == MotionPath::Line) {
        pos.x += s * dir.x;
        pos.y += s * dir.y;
      } else {
        angle += s / spec.orbit_radius;
        pos = {frame_center.x + spec.orbit_radius * std::cos(angle),
               frame_center.y + spec.orbit_radius * std::sin(angle)};
      }
    }
    const BoundingBox b{pos.x, pos.y, spec.target_w, spec.target_h};
    if (b.cx + b.w / 2 <= -0.5 || b.cx - b.w / 2 >= spec.width - 0.5 || b.cy + b.h / 2 <= -0.5 ||
        b.cy - b.h / 2 >= spec.height - 0.5) {
      throw std::invalid_argument("synthetic: target leaves the frame at frame " + std::to_string(t + 1));
    }
    boxes.push_back(b);
  }
  return boxes;
}

Sequence generate_synthetic(const SyntheticSpec& spec) {
  const auto boxes = synthetic_trajectory(spec);

  std::mt19937_64 rng(spec.seed);
  const ValueNoise bg_coarse(spec.width, spec.height, 24.0, rng);
  const ValueNoise bg_fine(spec.width, spec.height, 6.0, rng);
  const int tex_w = static_cast<int>(std::ceil(spec.target_w)) + 1;
  const int tex_h = static_cast<int>(std::ceil(spec.target_h)) + 1;
  const ValueNoise tg_coarse(tex_w, tex_h, 8.0, rng);
  const ValueNoise tg_fine(tex_w, tex_h, 3.0, rng);

  std::vector<double> background(static_cast<std::size_t>(spec.width) * spec.height);
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      background[static_cast<std::size_t>(y) * spec.width + x] =
          0.2 + 0.4 * bg_coarse(x, y) + 0.2 * bg_fine(x, y);
    }
  }
  auto texture = [&](double u, double v) {
    u = std::clamp(u, 0.0, spec.target_w);
    v = std::clamp(v, 0.0, spec.target_h);
    return 0.55 * tg_coarse(u, v) + 0.45 * tg_fine(u, v);
  };

  std::vector<Image> frames;
  frames.reserve(boxes.size());
  double max_disp = 0.0;
  for (std::size_t t = 0; t < boxes.size(); ++t) {
    const BoundingBox& b = boxes[t];
    const Point2d disp = t > 0 ? Point2d{b.cx - boxes[t - 1].cx, b.cy - boxes[t - 1].cy} : Point2d{0, 0};
    const double len = std::hypot(disp.x, disp.y);
    max_disp = std::max(max_disp, len);
    const int samples = spec.blur ? std::max(1, static_cast<int>(std::ceil(len))) : 1;

    std::vector<Point2d> centers;
    for (int k = 0; k < samples; ++k) {
      const double f = samples > 1 ? static_cast<double>(k) / (samples - 1) - 0.5 : 0.0;
      centers.push_back({b.cx + f * disp.x, b.cy + f * disp.y});
    }

    Image img(spec.width, spec.height, 1);
    for (int y = 0; y < spec.height; ++y) {
      for (int x = 0; x < spec.width; ++x) img.at(x, y) = quantize(background[static_cast<std::size_t>(y) * spec.width + x]);
    }
    const double reach = len / 2 + 1;
    const int x0 = std::max(0, static_cast<int>(std::floor(b.cx - b.w / 2 - reach)));
    const int x1 = std::min(spec.width - 1, static_cast<int>(std::ceil(b.cx + b.w / 2 + reach)));
    const int y0 = std::max(0, static_cast<int>(std::floor(b.cy - b.h / 2 - reach)));
    const int y1 = std::min(spec.height - 1, static_cast<int>(std::ceil(b.cy + b.h / 2 + reach)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const double bg = background[static_cast<std::size_t>(y) * spec.width + x];
        double acc = 0.0;
        for (const auto& c : centers) {
          const double left = c.x - b.w / 2;
          const double top = c.y - b.h / 2;
          const double a = coverage_1d(x, left, left + b.w) * coverage_1d(y, top, top + b.h);
          acc += a > 0.0 ? a * texture(x - left, y - top) + (1 - a) * bg : bg;
        }
        img.at(x, y) = quantize(acc / static_cast<double>(centers.size()));
      }
    }
    frames.push_back(std::move(img));
  }

  std::set<std::string> attrs(spec.attributes.begin(), spec.attributes.end());
  if (max_disp >= 20.0) attrs.insert("fast-motion");
  if (spec.blur) attrs.insert("motion-blur");
  return Sequence::in_memory(spec.name, std::move(frames), boxes, std::move(attrs));
}

std::string to_string(SpeedProfile p) {
  switch (p) {
    case SpeedProfile::Constant: return "constant";
    case SpeedProfile::Accelerating: return "accelerating";
    case SpeedProfile::StopAndGo: return "stop-and-go";
  }
  return "?";
}

std::string to_string(MotionPath p) { return p == MotionPath::Line ? "line" : "orbit"; }

SpeedProfile parse_speed_profile(const std::string& text) {
  if (text == "constant") return SpeedProfile::Constant;
  if (text == "accelerating") return SpeedProfile::Accelerating;
  if (text == "stop-and-go") return SpeedProfile::StopAndGo;
  throw std::invalid_argument("unknown motion profile '" + text + "'");
}

MotionPath parse_motion_path(const std::string& text) {
  if (text == "line") return MotionPath::Line;
  if (text == "orbit") return MotionPath::Orbit;
  throw std::invalid_argument("unknown motion path '" + text + "'");
}

std::vector<SyntheticSpec> synthetic_suite(const std::string& name, std::uint64_t seed) {
  std::vector<SyntheticSpec> out;
  if (name == "synth-fast") {
    // A 40 px target ramping to 28 px/frame on a circle: past what the S1
    // window can absorb, within the S2/S3 windows.
    for (std::uint64_t k = 0; k < 4; ++k) {
      SyntheticSpec s;
      s.name = "fast-orbit-" + std::to_string(k + 1);
      s.frames = 80;
      s.width = 480;
      s.height = 480;
      s.path = MotionPath::Orbit;
      s.orbit_radius = 150.0;
      s.profile = SpeedProfile::Accelerating;
      s.velocity = {4.0, 0.0};
      s.acceleration = 1.0;
      s.max_speed = 28.0;
      s.seed = seed + k;
      out.push_back(s);
    }
    return out;
  }
  if (name == "synth-slow") {
    const Velocity velocities[] = {{1.0, 0.5}, {-1.5, 0.0}, {0.0, 0.0}};
    for (std::uint64_t k = 0; k < 3; ++k) {
      SyntheticSpec s;
      s.name = "slow-line-" + std::to_string(k + 1);
      s.velocity = velocities[k];
      s.seed = seed + 100 + k;
      out.push_back(s);
    }
    return out;
  }
  if (name == "synth-blur") {
    for (std::uint64_t k = 0; k < 2; ++k) {
      SyntheticSpec s;
      s.name = "blur-stopgo-" + std::to_string(k + 1);
      s.width = 400;
      s.height = 400;
      s.path = MotionPath::Orbit;
      s.orbit_radius = 120.0;
      s.profile = SpeedProfile::StopAndGo;
      s.velocity = {8.0 + 4.0 * static_cast<double>(k), 0.0};
      s.blur = true;
      s.seed = seed + 200 + k;
      out.push_back(s);
    }
    return out;
  }
  if (name == "synth-all") {
    for (const auto& n : {"synth-slow", "synth-fast", "synth-blur"}) {
      auto part = synthetic_suite(n, seed);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<std::string> synthetic_suite_names() { return {"synth-slow", "synth-fast", "synth-blur", "synth-all"}; }

}  // namespace adtrack
