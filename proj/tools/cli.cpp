#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "adtrack/config.hpp"
#include "adtrack/dcf.hpp"
#include "adtrack/ope.hpp"
#include "adtrack/sequence.hpp"
#include "adtrack/synthetic.hpp"
#include "adtrack/tracker.hpp"

namespace adtrack::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kFormatVersion = "1";

// Thrown for bad flag values found after CLI11 has accepted the syntax.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrackerFlags {
  std::vector<std::string> overrides;
  std::string padding_mode;
  std::string threshold_mode;
  std::string resize_method;
};

void add_tracker_flags(CLI::App& cmd, TrackerFlags& f) {
  cmd.add_option("--set", f.overrides, "Config override key=value (dotted keys reach nested fields)");
  cmd.add_option("--padding-mode", f.padding_mode, "fixed pins the level to S1; sasa adapts it")
      ->check(CLI::IsMember({"fixed", "sasa"}));
  cmd.add_option("--threshold-mode", f.threshold_mode, "Level switching rule")
      ->check(CLI::IsMember({"same", "hysteresis", "entangled"}));
  cmd.add_option("--resize-method", f.resize_method, "Filter resize method")
      ->check(CLI::IsMember({"spatial", "frequency"}));
}

struct ResolvedConfig {
  std::string label;
  std::string source;
  TrackerConfig config;
};

// `entry` is "source" or "label=source"; source is a preset name or a file.
ResolvedConfig resolve_config(const std::string& entry, const TrackerFlags& f) {
  ResolvedConfig rc;
  rc.source = entry;
  const auto eq = entry.find('=');
  if (eq != std::string::npos && eq > 0 && !fs::exists(entry)) {
    rc.label = entry.substr(0, eq);
    rc.source = entry.substr(eq + 1);
  } else {
    const auto names = preset_names();
    rc.label = std::find(names.begin(), names.end(), entry) != names.end() ? entry : fs::path(entry).stem().string();
  }
  json j = load_config_json(rc.source);
  for (const auto& o : f.overrides) apply_override(j, o);
  if (!f.padding_mode.empty()) j["adaptive"] = f.padding_mode == "sasa";
  if (!f.threshold_mode.empty()) j["thresholds"]["mode"] = f.threshold_mode;
  if (!f.resize_method.empty()) j["resize_method"] = f.resize_method;
  rc.config = config_from_json(j);
  return rc;
}

json flags_json(const TrackerFlags& f) {
  json j;
  j["overrides"] = f.overrides;
  j["padding_mode"] = f.padding_mode.empty() ? json(nullptr) : json(f.padding_mode);
  j["threshold_mode"] = f.threshold_mode.empty() ? json(nullptr) : json(f.threshold_mode);
  j["resize_method"] = f.resize_method.empty() ? json(nullptr) : json(f.resize_method);
  return j;
}

void write_manifest(const fs::path& dir, json manifest, const std::vector<std::string>& args) {
  manifest["format_version"] = kFormatVersion;
  manifest["args"] = args;
  fs::create_directories(dir);
  std::ofstream out(dir / "manifest.json");
  if (!out) throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
  out << manifest.dump(2) << '\n';
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

// ---- track ---------------------------------------------------------------

struct TrackOptions {
  std::string sequence;
  std::string box;
  std::string config = "dcf_sasa";
  std::string out;
  std::string save_model;
  TrackerFlags flags;
};

int cmd_track(const TrackOptions& o, const std::vector<std::string>& args, std::ostream& out) {
  const ResolvedConfig rc = resolve_config(o.config, o.flags);
  std::optional<BoundingBox> init;
  if (!o.box.empty()) {
    try {
      init = from_otb_rect(parse_otb_rect(o.box));
    } catch (const std::invalid_argument& e) {
      throw UsageError("--box: " + std::string(e.what()));
    }
  }
  const Sequence seq = load_otb_sequence(o.sequence);
  const BoundingBox start = init ? *init : seq.groundtruth().front();

  const auto frame_at = [&seq](std::size_t i) { return seq.frame(i); };
  std::optional<FilterModel> final_model;
  SequenceRun run;
  {
    Tracker tracker(seq.frame(0), start, rc.config);
    FrameDiagnostics first;
    first.frame_index = 1;
    first.box = start;
    run.boxes.push_back(start);
    run.diagnostics.push_back(first);
    for (std::size_t i = 1; i < seq.size(); ++i) {
      auto d = tracker.track(frame_at(i));
      run.boxes.push_back(d.box);
      run.diagnostics.push_back(d);
    }
    final_model = tracker.state().model;
  }

  const fs::path dir(o.out);
  fs::create_directories(dir);
  {
    std::ofstream csv(dir / "track.csv");
    if (!csv) throw std::runtime_error("cannot write " + (dir / "track.csv").string());
    write_frames_csv(csv, rc.label, seq.name(), run, true);
  }
  json outputs = json::array({"track.csv"});
  if (!o.save_model.empty()) {
    save_model(o.save_model, *final_model);
    outputs.push_back(o.save_model);
  }

  json m;
  m["command"] = "track";
  m["sequence"] = o.sequence;
  m["box"] = o.box.empty() ? json(nullptr) : json(o.box);
  m["config_source"] = rc.source;
  m["config"] = to_json(rc.config);
  m["flags"] = flags_json(o.flags);
  m["outputs"] = outputs;
  write_manifest(dir, m, args);
  out << "tracked " << seq.size() << " frames of " << seq.name() << " -> " << (dir / "track.csv").string() << '\n';
  return 0;
}

// ---- bench ---------------------------------------------------------------

struct BenchOptions {
  std::string suite;
  std::vector<std::string> datasets;
  std::vector<std::string> configs;
  std::string out;
  std::string attributes;
  unsigned threads = 0;
  std::uint64_t seed = 1;
  bool oracle = false;
  TrackerFlags flags;
};

int cmd_bench(const BenchOptions& o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (o.suite.empty() == o.datasets.empty()) throw UsageError("give exactly one of --suite or --dataset");

  std::vector<ResolvedConfig> configs;
  if (o.configs.empty()) {
    TrackerFlags fixed = o.flags;
    if (fixed.padding_mode.empty()) fixed.padding_mode = "fixed";
    configs.push_back(resolve_config("dcf_fixed=dcf_sasa", fixed));
    configs.push_back(resolve_config("dcf_sasa", o.flags));
  } else {
    std::set<std::string> labels;
    for (const auto& c : o.configs) {
      configs.push_back(resolve_config(c, o.flags));
      if (!labels.insert(configs.back().label).second) {
        throw UsageError("duplicate tracker label '" + configs.back().label + "'; use label=source");
      }
    }
  }

  std::vector<Sequence> sequences;
  std::size_t load_errors = 0;
  json inputs = json::array();
  if (!o.suite.empty()) {
    const auto names = synthetic_suite_names();
    if (std::find(names.begin(), names.end(), o.suite) == names.end()) {
      throw UsageError("unknown suite '" + o.suite + "'");
    }
    for (const auto& spec : synthetic_suite(o.suite, o.seed)) sequences.push_back(generate_synthetic(spec));
    inputs.push_back({{"suite", o.suite}, {"seed", o.seed}});
  } else {
    for (const auto& d : o.datasets) {
      if (!fs::is_directory(d)) throw UsageError("dataset '" + d + "' is not a directory");
      const auto dirs = find_otb_sequences(d);
      if (dirs.empty()) throw UsageError("dataset '" + d + "' contains no OTB sequences");
      for (const auto& s : dirs) {
        try {
          sequences.push_back(load_otb_sequence(s));
        } catch (const std::exception& e) {
          err << "error: " << s.string() << ": " << e.what() << '\n';
          ++load_errors;
        }
      }
      inputs.push_back({{"dataset", d}});
    }
    if (sequences.empty()) throw std::runtime_error("no sequence could be loaded");
  }

  std::vector<NamedTracker> trackers;
  for (const auto& rc : configs) trackers.push_back(make_dcf_tracker(rc.label, rc.config));
  if (o.oracle) trackers.push_back(make_oracle_tracker());

  OpeOptions opts;
  opts.threads = o.threads;
  if (o.attributes == "all") {
    std::set<std::string> tags;
    for (const auto& s : sequences) tags.insert(s.attributes().begin(), s.attributes().end());
    opts.attributes.assign(tags.begin(), tags.end());
  } else {
    opts.attributes = split_list(o.attributes);
  }

  const OpeReport report = run_ope(trackers, sequences, opts);
  const fs::path dir(o.out);
  write_ope_outputs(report, dir);
  for (const auto& r : report.results) {
    if (r.error) err << "error: " << r.tracker << " on " << r.sequence << ": " << *r.error << '\n';
  }

  json m;
  m["command"] = "bench";
  m["inputs"] = inputs;
  json cfgs = json::array();
  for (const auto& rc : configs) cfgs.push_back({{"label", rc.label}, {"source", rc.source}, {"config", to_json(rc.config)}});
  m["trackers"] = cfgs;
  m["oracle"] = o.oracle;
  m["flags"] = flags_json(o.flags);
  m["attributes"] = opts.attributes;
  m["seed"] = o.seed;
  json outputs = {"summary.csv", "curves.csv", "sequences.csv", "frames.csv", "precision.svg", "success.svg"};
  if (!report.by_attribute.empty()) outputs.push_back("attributes.csv");
  m["outputs"] = outputs;
  write_manifest(dir, m, args);

  out << format_summary(report);
  return (report.failures > 0 || load_errors > 0) ? 1 : 0;
}

// ---- synth ---------------------------------------------------------------

struct SynthOptions {
  std::string out;
  std::string suite;
  std::string spec;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  bool blur = false;
};

int cmd_synth(const SynthOptions& o, const std::vector<std::string>& args, std::ostream& out) {
  if (!o.suite.empty() && (!o.spec.empty() || !o.overrides.empty())) {
    throw UsageError("--suite cannot be combined with --spec or --set");
  }
  std::vector<SyntheticSpec> specs;
  if (!o.suite.empty()) {
    const auto names = synthetic_suite_names();
    if (std::find(names.begin(), names.end(), o.suite) == names.end()) {
      throw UsageError("unknown suite '" + o.suite + "'");
    }
    specs = synthetic_suite(o.suite, o.seed.value_or(1));
    if (o.blur) {
      for (auto& s : specs) s.blur = true;
    }
  } else {
    json j = to_json(SyntheticSpec{});
    if (!o.spec.empty()) {
      std::ifstream in(o.spec);
      if (!in) throw UsageError("cannot read spec file '" + o.spec + "'");
      try {
        for (const auto& [k, v] : json::parse(in).items()) j[k] = v;
      } catch (const json::parse_error& e) {
        throw UsageError("spec file '" + o.spec + "': " + e.what());
      }
    }
    for (const auto& a : o.overrides) apply_override(j, a);
    if (o.seed) j["seed"] = *o.seed;
    if (o.blur) j["blur"] = true;
    try {
      specs.push_back(synthetic_spec_from_json(j));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  const fs::path dir(o.out);
  json spec_list = json::array();
  json outputs = json::array();
  for (const auto& s : specs) {
    Sequence seq;
    try {
      seq = generate_synthetic(s);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const fs::path target = o.suite.empty() ? dir : dir / s.name;
    write_otb_sequence(target, seq);
    spec_list.push_back(to_json(s));
    outputs.push_back(o.suite.empty() ? "." : s.name);
    out << "wrote " << seq.size() << " frames to " << target.string() << '\n';
  }

  json m;
  m["command"] = "synth";
  m["suite"] = o.suite.empty() ? json(nullptr) : json(o.suite);
  m["spec_file"] = o.spec.empty() ? json(nullptr) : json(o.spec);
  m["overrides"] = o.overrides;
  m["seed"] = o.seed ? json(*o.seed) : json(nullptr);
  m["specs"] = spec_list;
  m["outputs"] = outputs;
  write_manifest(dir, m, args);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Correlation filter tracking with a motion-adaptive search area", "adtrack"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kFormatVersion);

  TrackOptions track;
  auto* t = app.add_subcommand("track", "Track one OTB-layout sequence and write per-frame diagnostics");
  t->add_option("sequence", track.sequence, "Sequence directory (img/ + groundtruth_rect.txt)")->required();
  t->add_option("--box", track.box, "Initial box x,y,w,h (1-based top-left); defaults to the first ground truth");
  t->add_option("--config", track.config, "Preset name or JSON config file")->capture_default_str();
  t->add_option("--out", track.out, "Output directory")->required();
  t->add_option("--save-model", track.save_model, "Write the final filter snapshot to this file");
  add_tracker_flags(*t, track.flags);

  BenchOptions bench;
  auto* b = app.add_subcommand("bench", "One-pass evaluation of one or more configs");
  b->add_option("--suite", bench.suite, "Synthetic suite: synth-fast, synth-slow, synth-blur, synth-all");
  b->add_option("--dataset", bench.datasets, "OTB dataset root or sequence directory (repeatable)");
  b->add_option("--config", bench.configs, "Tracker as source or label=source (repeatable); default: dcf_fixed and dcf_sasa");
  b->add_option("--out", bench.out, "Output directory")->required();
  b->add_option("--attributes", bench.attributes, "Comma-separated attribute sub-tables, or 'all'");
  b->add_option("--threads", bench.threads, "Worker threads (0 = hardware concurrency)");
  b->add_option("--seed", bench.seed, "Seed for synthetic suites")->capture_default_str();
  b->add_flag("--oracle", bench.oracle, "Add a ground-truth echo tracker");
  add_tracker_flags(*b, bench.flags);

  SynthOptions synth;
  auto* s = app.add_subcommand("synth", "Write a synthetic sequence (or suite) in OTB layout");
  s->add_option("--out", synth.out, "Output directory")->required();
  s->add_option("--suite", synth.suite, "Write every sequence of a named suite into subdirectories");
  s->add_option("--spec", synth.spec, "JSON scenario file; missing keys keep their defaults");
  s->add_option("--set", synth.overrides, "Scenario override key=value");
  s->add_option("--seed", synth.seed, "Texture and noise seed");
  s->add_flag("--blur", synth.blur, "Apply motion blur along the displacement");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*t) return cmd_track(track, args, out);
    if (*b) return cmd_bench(bench, args, out, err);
    return cmd_synth(synth, args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace adtrack::cli
