#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace adtrack {

/// Search-area level, ordered S1 < S2 < S3.
enum class Level { S1 = 0, S2 = 1, S3 = 2 };

enum class ThresholdMode { Same, Hysteresis, Entangled };

struct ThresholdConfig {
  double t1 = 0.1;
  double t2 = 0.2;
  double t3 = 0.5;
  double t4 = 1.5;
  ThresholdMode mode = ThresholdMode::Entangled;
  int shrink_dwell = 10;
  int grow_dwell = 1;
};

/// Throws std::invalid_argument when the thresholds violate the ordering the
/// mode needs: T1 < T2 for `same`, T1 < T2 < T3 < T4 otherwise. T3 = T4 =
/// +inf is accepted and disables growth.
void validate(const ThresholdConfig& cfg);

/// Level plus the dwell counters of the pending transitions. The "strong"
/// counters track the condition of a two-level jump (S3 -> S1 needs zeta < T1,
/// S1 -> S3 needs zeta > T4); the plain counters track the one-level condition,
/// which is implied by the strong one.
struct SearchAreaState {
  Level level = Level::S1;
  int consecutive_below = 0;
  int consecutive_below_strong = 0;
  int consecutive_above = 0;
  int consecutive_above_strong = 0;

  friend bool operator==(const SearchAreaState&, const SearchAreaState&) = default;
};

/// One controller update for criterion value `zeta` (>= 0).
///
/// same:        S1 if zeta < T1, S2 if T1 <= zeta <= T2, S3 if zeta > T2; no dwell.
/// hysteresis:  grow S1->S2 on zeta > T2 and S2->S3 on zeta > T4; shrink
///              S2->S1 on zeta < T1 and S3->S2 on zeta < T3.
/// entangled:   grow S1->S3 on zeta > T4, S1->S2 on zeta > T3, S2->S3 on
///              zeta > T4; shrink S3->S1 on zeta < T1, S3->S2 on zeta < T2,
///              S2->S1 on zeta < T1.
/// In the hysteresis modes a grow fires after grow_dwell consecutive
/// qualifying steps and a shrink after shrink_dwell. Counters reset when
/// their condition breaks or the level changes.
SearchAreaState step(const SearchAreaState& state, double zeta, const ThresholdConfig& cfg);

std::string_view to_string(Level level);
std::string_view to_string(ThresholdMode mode);
ThresholdMode parse_threshold_mode(std::string_view text);

inline constexpr double kNeverGrow = std::numeric_limits<double>::infinity();

}  // namespace adtrack
