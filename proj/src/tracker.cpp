#include "adtrack/tracker.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "adtrack/spectral.hpp"

namespace adtrack {
namespace {

constexpr int kMinCells = 4;

int wrap_offset(int offset, int n) {
  offset = ((offset % n) + n) % n;
  return offset > n / 2 ? offset - n : offset;
}

}  // namespace

void validate(const TrackerConfig& cfg) {
  for (double p : cfg.paddings) {
    if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("tracker config: paddings must be > 0");
  }
  if (!(cfg.paddings[0] <= cfg.paddings[1] && cfg.paddings[1] <= cfg.paddings[2])) {
    throw std::invalid_argument("tracker config: paddings must satisfy S1 <= S2 <= S3");
  }
  validate(cfg.thresholds);
  if (!(cfg.lambda >= 0.0)) throw std::invalid_argument("tracker config: lambda must be >= 0");
  if (!(cfg.eta >= 0.0 && cfg.eta <= 1.0)) throw std::invalid_argument("tracker config: eta must be in [0,1]");
  if (cfg.fit_order < 0) throw std::invalid_argument("tracker config: fit order must be >= 0");
  if (cfg.history < 1) throw std::invalid_argument("tracker config: history must be >= 1");
  if (cfg.features.cell < 1) throw std::invalid_argument("tracker config: cell must be >= 1");
  if (!(cfg.sigma_factor > 0.0)) throw std::invalid_argument("tracker config: sigma factor must be > 0");
  if (cfg.max_cells < kMinCells * kMinCells) throw std::invalid_argument("tracker config: max_cells too small");
}

TrackerConfig preset(const std::string& name) {
  TrackerConfig cfg;
  if (name == "dcf_sasa") {
    cfg.paddings = {1.0, 1.8, 2.6};
    cfg.thresholds.t3 = 0.5;
    cfg.thresholds.t4 = 1.5;
  } else if (name == "dsst_sasa") {
    cfg.paddings = {1.5, 2.0, 2.5};
    cfg.thresholds.t3 = 0.6;
    cfg.thresholds.t4 = 0.9;
  } else if (name == "samf_sasa") {
    cfg.paddings = {1.5, 2.0, 2.5};
    cfg.thresholds.t3 = 0.5;
    cfg.thresholds.t4 = 1.3;
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  cfg.thresholds.t1 = 0.1;
  cfg.thresholds.t2 = 0.2;
  return cfg;
}

std::vector<std::string> preset_names() { return {"dcf_sasa", "dsst_sasa", "samf_sasa"}; }

Tracker::Tracker(const Image& frame, const BoundingBox& box, const TrackerConfig& cfg) {
  validate(cfg);
  if (!(box.w > 0.0 && box.h > 0.0) || !std::isfinite(box.w) || !std::isfinite(box.h)) {
    throw std::invalid_argument("tracker init: degenerate box");
  }
  if (!std::isfinite(box.cx) || !std::isfinite(box.cy)) throw std::invalid_argument("tracker init: non-finite box center");
  if (box.cx + box.w / 2 < 0 || box.cx - box.w / 2 > frame.width() || box.cy + box.h / 2 < 0 ||
      box.cy - box.h / 2 > frame.height()) {
    throw std::invalid_argument("tracker init: box does not overlap the frame");
  }

  state_.config = cfg;
  state_.position = box;
  state_.initial_size = {box.w, box.h};
  state_.history = MotionHistory(cfg.history);
  state_.history.push(box.center());
  state_.frame_index = 1;
  state_.frame_width = frame.width();
  state_.frame_height = frame.height();

  const double cell = cfg.features.cell;
  const double largest = 1.0 + cfg.paddings[2];
  const double cells_area = (box.w * largest / cell) * (box.h * largest / cell);
  state_.pixel_pitch = cells_area > cfg.max_cells ? std::sqrt(cells_area / cfg.max_cells) : 1.0;

  state_.window = window_for(Level::S1);
  const FeatureMap feat = features_at(frame, box.center(), state_.window);
  state_.model = train_init(feat, label_for(state_.window.cells), cfg.lambda, cfg.eta);
}

Window Tracker::window_for(Level level) const {
  const auto& cfg = state_.config;
  const double pad = cfg.paddings[static_cast<std::size_t>(level)];
  const double step = cfg.features.cell * state_.pixel_pitch;
  const int cols = std::max(kMinCells, static_cast<int>(std::lround(state_.initial_size.width * (1.0 + pad) / step)));
  const int rows = std::max(kMinCells, static_cast<int>(std::lround(state_.initial_size.height * (1.0 + pad) / step)));
  return {{rows, cols}, cols * step, rows * step};
}

FeatureMap Tracker::features_at(const Image& frame, Point2d center, const Window& window) const {
  const int cell = state_.config.features.cell;
  const int out_w = window.cells.cols * cell;
  const int out_h = window.cells.rows * cell;
  const Image patch = state_.pixel_pitch == 1.0
                          ? extract_patch(frame, center, out_w, out_h)
                          : extract_patch_resampled(frame, center, window.width, window.height, out_w, out_h);
  return featurize(patch, state_.config.features);
}

const Spectrum& Tracker::label_for(GridSize cells) {
  if (label_.empty() || label_size_ != cells) {
    const double step = state_.config.features.cell * state_.pixel_pitch;
    const double target_cells = std::sqrt((state_.initial_size.width / step) * (state_.initial_size.height / step));
    const double sigma = state_.config.sigma_factor * target_cells;
    label_ = dft2(gaussian_label(cells.rows, cells.cols, sigma, {cells.rows / 2, cells.cols / 2}));
    label_size_ = cells;
  }
  return label_;
}

FrameDiagnostics Tracker::track(const Image& frame) {
  if (frame.width() != state_.frame_width || frame.height() != state_.frame_height) {
    throw std::invalid_argument("track: frame size differs from the initialization frame");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto& cfg = state_.config;
  FrameDiagnostics diag;

  // Localize with the previous filter at the previous position.
  const FeatureMap search = features_at(frame, state_.position.center(), state_.window);
  const ResponseMap response = detect(state_.model, search);
  const GridSize cells = state_.window.cells;
  const double step_px = cfg.features.cell * state_.pixel_pitch;
  const int dr = wrap_offset(response.peak_pos.row - cells.rows / 2, cells.rows);
  const int dc = wrap_offset(response.peak_pos.col - cells.cols / 2, cells.cols);
  state_.position.cx += dc * step_px;
  state_.position.cy += dr * step_px;
  diag.psr = response.psr;
  diag.peak = response.peak_value;
  const bool confident = !cfg.confidence_gate || response.psr >= *cfg.confidence_gate;
  diag.low_confidence = !confident;

  // Movement criterion from the extrapolated velocity.
  state_.history.push(state_.position.center());
  diag.zeta = criterion(predict_velocity(state_.history, cfg.fit_order), state_.initial_size);

  // Search-area level and filter size.
  if (cfg.adaptive) {
    const SearchAreaState next = step(state_.area, diag.zeta, cfg.thresholds);
    if (next.level == state_.area.level || confident) {
      const Window window = window_for(next.level);
      if (window.cells != state_.window.cells) {
        state_.model = resize_model(state_.model, window.cells, cfg.resize_method);
        diag.resized = true;
      }
      state_.window = window;
      state_.area = next;
    }
  }

  // Appearance update at the new position and size.
  const FeatureMap appearance = features_at(frame, state_.position.center(), state_.window);
  state_.model = update(state_.model, appearance, label_for(state_.window.cells));

  ++state_.frame_index;
  diag.frame_index = state_.frame_index;
  diag.box = state_.position;
  diag.level = state_.area.level;
  diag.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return diag;
}

SequenceRun run_sequence(std::size_t count, const FrameProvider& frame_at, const BoundingBox& init_box,
                         const TrackerConfig& cfg) {
  if (count == 0) throw std::invalid_argument("run_sequence: no frames");
  SequenceRun run;
  run.boxes.reserve(count);
  run.diagnostics.reserve(count);

  const auto t0 = std::chrono::steady_clock::now();
  Tracker tracker(frame_at(0), init_box, cfg);
  FrameDiagnostics first;
  first.frame_index = 1;
  first.box = init_box;
  first.psr = 0.0;
  first.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  run.boxes.push_back(init_box);
  run.diagnostics.push_back(first);

  for (std::size_t i = 1; i < count; ++i) {
    const Image frame = frame_at(i);
    FrameDiagnostics diag = tracker.track(frame);
    run.boxes.push_back(diag.box);
    run.diagnostics.push_back(diag);
  }
  return run;
}

SequenceRun run_sequence(std::span<const Image> frames, const BoundingBox& init_box, const TrackerConfig& cfg) {
  return run_sequence(
      frames.size(), [&](std::size_t i) { return frames[i]; }, init_box, cfg);
}

}  // namespace adtrack
