#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adtrack/metrics.hpp"
#include "adtrack/sequence.hpp"
#include "adtrack/tracker.hpp"

namespace adtrack {

/// A tracker under evaluation: runs one sequence from its first ground-truth box.
struct NamedTracker {
  std::string name;
  std::function<SequenceRun(const Sequence&)> run;
};

NamedTracker make_dcf_tracker(std::string name, TrackerConfig cfg);
/// Echoes the ground truth; useful as a metric sanity check.
NamedTracker make_oracle_tracker(std::string name = "oracle");

struct SequenceResult {
  std::string tracker;
  std::string sequence;
  std::set<std::string> attributes;
  SequenceRun run;
  EvalResult eval;
  /// Set when the run threw; the other fields are then empty.
  std::optional<std::string> error;
};

struct OpeOptions {
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Attributes that get their own sub-table; empty omits them.
  std::vector<std::string> attributes;
};

struct OpeReport {
  std::vector<std::string> trackers;
  /// Per tracker and sequence, ordered by tracker then sequence name.
  std::vector<SequenceResult> results;
  /// Curves averaged over a tracker's successful sequences.
  std::map<std::string, EvalResult> overall;
  /// attribute -> tracker -> averaged result, over sequences carrying the tag.
  std::map<std::string, std::map<std::string, EvalResult>> by_attribute;
  std::size_t failures = 0;
};

/// One-pass evaluation: initialize on the first ground-truth box and never
/// re-initialize. Sequence-level failures are recorded and the run continues.
OpeReport run_ope(const std::vector<NamedTracker>& trackers, const std::vector<Sequence>& sequences,
                  const OpeOptions& options = {});

/// Writes summary.csv, curves.csv, sequences.csv, frames.csv,
/// attributes.csv (when present), precision.svg and success.svg.
void write_ope_outputs(const OpeReport& report, const std::filesystem::path& dir);

/// Per-frame diagnostics as CSV (header plus one row per frame).
void write_frames_csv(std::ostream& out, const std::string& tracker, const std::string& sequence,
                      const SequenceRun& run, bool header);

/// Plain-text side-by-side table of the overall results.
std::string format_summary(const OpeReport& report);

}  // namespace adtrack
