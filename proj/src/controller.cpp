#include "adtrack/controller.hpp"

#include <cmath>
#include <stdexcept>

namespace adtrack {
namespace {

Level up(Level l, int steps) { return static_cast<Level>(static_cast<int>(l) + steps); }
Level down(Level l, int steps) { return static_cast<Level>(static_cast<int>(l) - steps); }

// Conditions of the transitions leaving one level. A level has at most one
// one-level and one two-level move in each direction.
struct Moves {
  bool grow = false;
  bool grow_strong = false;
  bool shrink = false;
  bool shrink_strong = false;
};

Moves entangled_moves(Level level, double z, const ThresholdConfig& c) {
  switch (level) {
    case Level::S1: return {.grow = z > c.t3, .grow_strong = z > c.t4};
    case Level::S2: return {.grow = z > c.t4, .shrink = z < c.t1};
    case Level::S3: return {.shrink = z < c.t2, .shrink_strong = z < c.t1};
  }
  return {};
}

Moves hysteresis_moves(Level level, double z, const ThresholdConfig& c) {
  switch (level) {
    case Level::S1: return {.grow = z > c.t2};
    case Level::S2: return {.grow = z > c.t4, .shrink = z < c.t1};
    case Level::S3: return {.shrink = z < c.t3};
  }
  return {};
}

Level same_level(double z, const ThresholdConfig& c) {
  if (z < c.t1) return Level::S1;
  if (z <= c.t2) return Level::S2;
  return Level::S3;
}

}  // namespace

void validate(const ThresholdConfig& cfg) {
  if (std::isnan(cfg.t1) || std::isnan(cfg.t2) || std::isnan(cfg.t3) || std::isnan(cfg.t4)) {
    throw std::invalid_argument("thresholds must not be NaN");
  }
  if (!(cfg.t1 < cfg.t2)) throw std::invalid_argument("thresholds: need T1 < T2");
  if (cfg.shrink_dwell < 1 || cfg.grow_dwell < 1) throw std::invalid_argument("thresholds: dwell must be >= 1");
  if (cfg.mode == ThresholdMode::Same) return;
  if (!(cfg.t2 < cfg.t3)) throw std::invalid_argument("thresholds: need T2 < T3");
  const bool disabled = std::isinf(cfg.t3) && std::isinf(cfg.t4) && cfg.t3 > 0 && cfg.t4 > 0;
  if (!(cfg.t3 < cfg.t4) && !disabled) throw std::invalid_argument("thresholds: need T3 < T4");
}

SearchAreaState step(const SearchAreaState& state, double zeta, const ThresholdConfig& cfg) {
  validate(cfg);
  if (!(zeta >= 0.0)) throw std::invalid_argument("step: zeta must be >= 0");

  if (cfg.mode == ThresholdMode::Same) {
    SearchAreaState out;
    out.level = same_level(zeta, cfg);
    return out;
  }

  const Moves m = cfg.mode == ThresholdMode::Entangled ? entangled_moves(state.level, zeta, cfg)
                                                       : hysteresis_moves(state.level, zeta, cfg);
  SearchAreaState out = state;
  out.consecutive_above = m.grow ? state.consecutive_above + 1 : 0;
  out.consecutive_above_strong = m.grow_strong ? state.consecutive_above_strong + 1 : 0;
  out.consecutive_below = m.shrink ? state.consecutive_below + 1 : 0;
  out.consecutive_below_strong = m.shrink_strong ? state.consecutive_below_strong + 1 : 0;

  Level next = state.level;
  if (out.consecutive_above_strong >= cfg.grow_dwell) {
    next = up(state.level, 2);
  } else if (out.consecutive_above >= cfg.grow_dwell) {
    next = up(state.level, 1);
  } else if (out.consecutive_below_strong >= cfg.shrink_dwell) {
    next = down(state.level, 2);
  } else if (out.consecutive_below >= cfg.shrink_dwell) {
    next = down(state.level, 1);
  }
  if (next != state.level) {
    out = SearchAreaState{};
    out.level = next;
  }
  return out;
}

std::string_view to_string(Level level) {
  switch (level) {
    case Level::S1: return "S1";
    case Level::S2: return "S2";
    case Level::S3: return "S3";
  }
  return "?";
}

std::string_view to_string(ThresholdMode mode) {
  switch (mode) {
    case ThresholdMode::Same: return "same";
    case ThresholdMode::Hysteresis: return "hysteresis";
    case ThresholdMode::Entangled: return "entangled";
  }
  return "?";
}

ThresholdMode parse_threshold_mode(std::string_view text) {
  if (text == "same") return ThresholdMode::Same;
  if (text == "hysteresis") return ThresholdMode::Hysteresis;
  if (text == "entangled") return ThresholdMode::Entangled;
  throw std::invalid_argument("unknown threshold mode '" + std::string(text) + "'");
}

}  // namespace adtrack
