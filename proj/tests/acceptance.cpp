// Acceptance run: one PASS/FAIL/SKIP line per criterion; exit status 1 when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "adtrack/controller.hpp"
#include "adtrack/dcf.hpp"
#include "adtrack/metrics.hpp"
#include "adtrack/motion.hpp"
#include "adtrack/ope.hpp"
#include "adtrack/sequence.hpp"
#include "adtrack/spectral.hpp"
#include "adtrack/synthetic.hpp"
#include "adtrack/tracker.hpp"
#include "oracles.hpp"

using namespace adtrack;

namespace {

// Pinned tolerances and budgets.
constexpr double kCorrelationRelTol = 1e-6;
constexpr double kCorrelationBudgetS = 10.0;
constexpr int kCorrelationCases = 120;
constexpr double kSelfDetectTol = 1e-9;
constexpr double kSeriesRelTol = 1e-9;
constexpr double kPolyExactTol = 1e-9;
constexpr double kPolyOracleTol = 1e-8;
constexpr int kPolyOracleCases = 1000;
constexpr double kCriterionRelTol = 1e-12;
constexpr int kShrinkFrames = 10;
constexpr double kResizeTol = 1e-9;
constexpr double kFastMinMeanIou = 0.5;
constexpr double kFastMaxBaselineTailIou = 0.2;
constexpr std::size_t kFastMinFrames = 60;
constexpr std::size_t kFastTail = 10;
constexpr double kFastBudgetS = 60.0;
constexpr double kOverheadRatio = 1.2;
constexpr double kSoftFps = 25.0;
constexpr int kOverheadRepeats = 9;
constexpr double kAucTol = 1e-12;

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
  Verdict verdict = Verdict::Pass;
  std::string detail;
};

Outcome pass_if(bool ok, std::string detail) { return {ok ? Verdict::Pass : Verdict::Fail, std::move(detail)}; }

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

FeatureMap random_features(std::mt19937_64& rng, int rows, int cols, int depth) {
  FeatureMap f(rows, cols, depth);
  std::normal_distribution<double> g;
  for (auto& v : f.values()) v = g(rng);
  return f;
}

double relative_gap(const FilterModel& got, const FilterModel& want) {
  double scale = oracle::max_abs(want.denominator);
  double gap = oracle::max_abs_diff(got.denominator, want.denominator);
  for (int l = 0; l < want.depth(); ++l) {
    scale = std::max(scale, oracle::max_abs(want.numerator[l]));
    gap = std::max(gap, oracle::max_abs_diff(got.numerator[l], want.numerator[l]));
  }
  return gap / std::max(scale, 1e-300);
}

TrackerConfig fixed_config() {
  TrackerConfig c = preset("dcf_sasa");
  c.adaptive = false;
  return c;
}

double mean_iou(const std::vector<BoundingBox>& pred, const std::vector<BoundingBox>& gt, std::size_t from) {
  double sum = 0.0;
  for (std::size_t i = from; i < gt.size(); ++i) sum += iou(pred[i], gt[i]);
  return sum / static_cast<double>(gt.size() - from);
}

Outcome correlation_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> dim(1, 16), depth(1, 3);
  std::uniform_real_distribution<double> lam(0.01, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < kCorrelationCases; ++trial) {
    const int m = dim(rng), n = dim(rng), d = depth(rng);
    const double lambda = lam(rng);
    const FeatureMap f = random_features(rng, m, n, d);
    const RealGrid g = oracle::random_grid(rng, m, n);
    const FilterModel model = train_init(f, dft2(g), lambda, 0.1);

    std::vector<Spectrum> fs;
    for (int l = 0; l < d; ++l) fs.push_back(oracle::naive_dft2(f.channel(l)));
    const auto hs = oracle::per_bin_ridge(fs, oracle::naive_dft2(g), lambda);
    std::vector<RealGrid> h, z;
    const FeatureMap zf = random_features(rng, m, n, d);
    for (int l = 0; l < d; ++l) {
      const Spectrum spatial = oracle::naive_dft2(hs[l], +1);
      RealGrid hl(m, n);
      for (std::size_t i = 0; i < hl.count(); ++i) hl[i] = spatial[i].real() / (m * n);
      h.push_back(hl);
      z.push_back(zf.channel(l));
    }
    const RealGrid want = oracle::circular_cross_correlation(h, z);
    const RealGrid got = detect(model, zf).values;
    worst = std::max(worst, oracle::max_abs_diff(got, want) / std::max(oracle::max_abs(want), 1e-300));
  }
  const double elapsed = seconds_since(t0);
  return pass_if(worst <= kCorrelationRelTol && elapsed < kCorrelationBudgetS,
                 fmt("%d cases, worst relative error %.2e (tol %.0e), %.2f s (budget %.0f s)", kCorrelationCases,
                     worst, kCorrelationRelTol, elapsed, kCorrelationBudgetS));
}

Outcome self_detection() {
  std::mt19937_64 rng(1002);
  double worst = 0.0;
  bool peaks = true;
  struct Case {
    int m, n, d;
  };
  for (const Case c : {Case{9, 9, 1}, Case{16, 16, 3}, Case{10, 7, 2}, Case{13, 6, 3}, Case{8, 12, 1}}) {
    const FeatureMap f = random_features(rng, c.m, c.n, c.d);
    const GridIndex peak{c.m / 2, c.n / 2};
    const RealGrid g = gaussian_label(c.m, c.n, 1.1, peak);
    const ResponseMap r = detect(train_init(f, dft2(g), 0.0, 0.1), f);
    worst = std::max(worst, oracle::max_abs_diff(r.values, g));
    peaks = peaks && r.peak_pos == peak;
  }
  return pass_if(worst <= kSelfDetectTol && peaks,
                 fmt("5 grids, max deviation from label %.2e (tol %.0e), argmax at label peak: %s", worst,
                     kSelfDetectTol, peaks ? "yes" : "no"));
}

Outcome update_convergence() {
  std::mt19937_64 rng(1003);
  const int m = 10, n = 11, d = 3;
  const Spectrum label = dft2(gaussian_label(m, n, 1.2, {m / 2, n / 2}));
  const FeatureMap f0 = random_features(rng, m, n, d);
  const FeatureMap f1 = random_features(rng, m, n, d);
  double worst_series = 0.0, worst_rate = 0.0;
  for (double eta : {0.025, 0.1, 1.0}) {
    const FilterModel start = train_init(f0, label, 0.01, eta);
    const FilterModel target = train_init(f1, label, 0.01, eta);
    FilterModel cur = start;
    double prev_gap = relative_gap(start, target);
    for (int k = 1; k <= 80; ++k) {
      cur = update(cur, f1, label);
      const double keep = std::pow(1.0 - eta, k);
      FilterModel series = target;
      series.denominator = Spectrum(m, n);
      for (std::size_t i = 0; i < series.denominator.count(); ++i) {
        series.denominator[i] = keep * start.denominator[i] + (1.0 - keep) * target.denominator[i];
      }
      for (int l = 0; l < d; ++l) {
        for (std::size_t i = 0; i < series.numerator[l].count(); ++i) {
          series.numerator[l][i] = keep * start.numerator[l][i] + (1.0 - keep) * target.numerator[l][i];
        }
      }
      worst_series = std::max(worst_series, relative_gap(cur, series));
      const double gap = relative_gap(cur, target);
      // The ratio test is only meaningful while the gap is above rounding.
      if (prev_gap > 1e-8) worst_rate = std::max(worst_rate, std::abs(gap / prev_gap - (1.0 - eta)));
      prev_gap = gap;
    }
  }
  return pass_if(worst_series <= kSeriesRelTol && worst_rate <= 1e-6,
                 fmt("eta in {0.025, 0.1, 1}: max deviation from closed-form series %.2e (tol %.0e), "
                     "max |gap ratio - (1-eta)| %.2e",
                     worst_series, kSeriesRelTol, worst_rate));
}

Outcome polynomial_extrapolation() {
  std::mt19937_64 rng(1004);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  double exact = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const int deg = trial % 3;
    const double a0 = u(rng), a1 = deg >= 1 ? u(rng) : 0.0, a2 = deg >= 2 ? u(rng) : 0.0;
    auto p = [&](double i) { return a0 + a1 * i + a2 * i * i; };
    std::vector<double> s;
    for (int i = 1; i <= 5; ++i) s.push_back(p(i));
    exact = std::max(exact, std::abs(polyfit_extrapolate(s, 2) - p(6)));
  }
  std::uniform_real_distribution<double> big(-20.0, 20.0);
  std::uniform_int_distribution<int> len(1, 8), order(0, 3);
  double vs_oracle = 0.0;
  for (int trial = 0; trial < kPolyOracleCases; ++trial) {
    std::vector<double> s(len(rng));
    for (auto& v : s) v = big(rng);
    const int o = order(rng);
    vs_oracle = std::max(vs_oracle, std::abs(polyfit_extrapolate(s, o) - oracle::normal_equations_extrapolate(s, o)));
  }
  return pass_if(exact <= kPolyExactTol && vs_oracle <= kPolyOracleTol,
                 fmt("degree<=2 over 5 samples: max error %.2e (tol %.0e); %d random cases vs normal equations: "
                     "%.2e (tol %.0e)",
                     exact, kPolyExactTol, kPolyOracleCases, vs_oracle, kPolyOracleTol));
}

Outcome motion_criterion() {
  const double z = criterion({10.0, 0.0}, {50.0, 50.0});
  std::mt19937_64 rng(1005);
  std::uniform_real_distribution<double> v(-30.0, 30.0), size(5.0, 200.0), k(-4.0, 4.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Velocity a{v(rng), v(rng)};
    const InitialSize s{size(rng), size(rng)};
    const double base = criterion(a, s);
    const double c = k(rng);
    const double scale = std::max(base, 1e-300);
    worst = std::max(worst, std::abs(criterion({c * a.x, c * a.y}, s) - std::abs(c) * base) / (std::abs(c) * scale));
    for (const Velocity flip : {Velocity{-a.x, a.y}, Velocity{a.x, -a.y}, Velocity{-a.x, -a.y}}) {
      worst = std::max(worst, std::abs(criterion(flip, s) - base) / scale);
    }
  }
  return pass_if(z == 0.2 && worst <= kCriterionRelTol,
                 fmt("zeta((10,0), 50x50) = %.17g; scaling and sign flips on 1000 cases: %.2e (tol %.0e)", z, worst,
                     kCriterionRelTol));
}

SearchAreaState at(Level l) {
  SearchAreaState s;
  s.level = l;
  return s;
}

Outcome controller_table() {
  const ThresholdConfig base = preset("dcf_sasa").thresholds;
  int mismatches = 0, checked = 0;
  for (auto mode : {ThresholdMode::Same, ThresholdMode::Hysteresis, ThresholdMode::Entangled}) {
    ThresholdConfig t = base;
    t.mode = mode;
    for (int i = 0; i <= 40; ++i) {
      const double z = i * 0.05;
      for (Level from : {Level::S1, Level::S2, Level::S3}) {
        ++checked;
        const Level first = step(at(from), z, t).level;
        bool ok = first == oracle::expected_level(from, z, mode, t, false);
        const Level full = oracle::expected_level(from, z, mode, t, true);
        // A shrink completes only after the dwell; hold the value that long.
        if (full < from && mode != ThresholdMode::Same) {
          SearchAreaState s = at(from);
          for (int k = 1; k < t.shrink_dwell; ++k) {
            s = step(s, z, t);
            ok = ok && s.level == from;
          }
          ok = ok && step(s, z, t).level == full;
        } else {
          ok = ok && first == full;
        }
        if (!ok) ++mismatches;
      }
    }
  }

  // Entangled S2 -> S1 below T1: nine frames hold, the tenth shrinks; a
  // single frame above T1 restarts the count.
  ThresholdConfig t = base;
  const double below = 0.05, above = 0.15;
  SearchAreaState s = at(Level::S2);
  int frames_to_shrink = 0;
  while (s.level == Level::S2 && frames_to_shrink < 100) {
    s = step(s, below, t);
    ++frames_to_shrink;
  }
  SearchAreaState c = at(Level::S2);
  for (int k = 0; k < kShrinkFrames - 1; ++k) c = step(c, below, t);
  const bool nine_hold = c.level == Level::S2;
  c = step(c, above, t);
  for (int k = 0; k < kShrinkFrames - 1; ++k) c = step(c, below, t);
  const bool reset_holds = c.level == Level::S2;
  c = step(c, below, t);
  const bool then_shrinks = c.level == Level::S1;

  return pass_if(mismatches == 0 && base.shrink_dwell == kShrinkFrames && frames_to_shrink == kShrinkFrames &&
                     nine_hold && reset_holds && then_shrinks,
                 fmt("%d/%d table entries match; shrink after %d frames (want %d); 9 frames hold: %s; "
                     "interrupted run holds: %s",
                     checked - mismatches, checked, frames_to_shrink, kShrinkFrames, nine_hold ? "yes" : "no",
                     reset_holds && then_shrinks ? "yes" : "no"));
}

Outcome resize_round_trip() {
  std::mt19937_64 rng(1007);
  std::uniform_int_distribution<int> dim(1, 16), extra(0, 10);
  std::normal_distribution<double> g;
  double spec_worst = 0.0, spatial_worst = 0.0, model_worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = dim(rng), n = dim(rng), m2 = m + extra(rng), n2 = n + extra(rng);
    Spectrum s(m, n);
    for (auto& v : s.values()) v = {g(rng), g(rng)};
    const Spectrum back = resize_spectrum(resize_spectrum(s, m2, n2), m, n);
    spec_worst = std::max(spec_worst, oracle::max_abs_diff(back, s) / std::max(1.0, oracle::max_abs(s)));
    const RealGrid r = oracle::random_grid(rng, m, n);
    const RealGrid rb = resize_grid_spatial(resize_grid_spatial(r, m2, n2), m, n);
    spatial_worst = std::max(spatial_worst, oracle::max_abs_diff(rb, r));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 4 + trial % 9, n = 5 + trial % 7;
    const FeatureMap f = random_features(rng, m, n, 2);
    FilterModel model = train_init(f, dft2(gaussian_label(m, n, 1.0, {m / 2, n / 2})), 0.01, 0.1);
    for (auto method : {ResizeMethod::Frequency, ResizeMethod::Spatial}) {
      const FilterModel back = resize_model(resize_model(model, {m + 5, n + 4}, method), {m, n}, method);
      model_worst = std::max(model_worst, relative_gap(back, model));
    }
  }

  // Analytic trigonometric interpolant of band-limited content.
  double cosine_worst = 0.0;
  for (int N : {5, 8, 9}) {
    for (int N2 : {12, 17, 20}) {
      for (int k = 0; 2 * k < N; ++k) {
        if (2 * k == N) continue;
        RealGrid x(1, N);
        for (int i = 0; i < N; ++i) x(0, i) = std::cos(2.0 * std::numbers::pi * k * i / N + 0.3);
        const RealGrid y = idft2(resize_spectrum(dft2(x), 1, N2));
        for (int i = 0; i < N2; ++i) {
          cosine_worst = std::max(cosine_worst, std::abs(y(0, i) - std::cos(2.0 * std::numbers::pi * k * i / N2 + 0.3)));
        }
      }
    }
  }
  const bool ok = spec_worst <= kResizeTol && cosine_worst <= kResizeTol && spatial_worst <= kResizeTol &&
                  model_worst <= kResizeTol;
  return pass_if(ok, fmt("resize_spectrum round trip %.2e, cosine interpolant %.2e, spatial round trip %.2e, "
                         "resize_model round trip (both methods) %.2e (tol %.0e)",
                         spec_worst, cosine_worst, spatial_worst, model_worst, kResizeTol));
}

std::vector<SyntheticSpec> containment_specs() {
  SyntheticSpec line;
  line.name = "line";
  line.velocity = {1.5, 0.5};
  line.frames = 50;
  SyntheticSpec accel;
  accel.name = "accelerating";
  accel.profile = SpeedProfile::Accelerating;
  accel.velocity = {2.0, 1.0};
  accel.acceleration = 0.6;
  accel.start = Point2d{60, 60};
  accel.width = 400;
  accel.height = 300;
  accel.frames = 30;
  accel.seed = 5;
  SyntheticSpec orbit;
  orbit.name = "orbit";
  orbit.path = MotionPath::Orbit;
  orbit.profile = SpeedProfile::StopAndGo;
  orbit.velocity = {14, 0};
  orbit.width = 400;
  orbit.height = 400;
  orbit.orbit_radius = 120;
  orbit.frames = 50;
  orbit.seed = 9;
  return {line, accel, orbit};
}

Outcome baseline_containment() {
  TrackerConfig flat = preset("dcf_sasa");
  flat.paddings = {flat.paddings[0], flat.paddings[0], flat.paddings[0]};
  int identical = 0, level_changes = 0;
  std::size_t frames = 0;
  const auto specs = containment_specs();
  for (const auto& spec : specs) {
    const Sequence seq = generate_synthetic(spec);
    const auto provider = [&](std::size_t i) { return seq.frame(i); };
    const auto a = run_sequence(seq.size(), provider, seq.groundtruth()[0], fixed_config());
    const auto b = run_sequence(seq.size(), provider, seq.groundtruth()[0], flat);
    bool same = a.boxes.size() == b.boxes.size();
    for (std::size_t i = 0; same && i < a.boxes.size(); ++i) same = a.boxes[i] == b.boxes[i];
    identical += same ? 1 : 0;
    for (std::size_t i = 1; i < b.diagnostics.size(); ++i) {
      level_changes += b.diagnostics[i].level != b.diagnostics[i - 1].level ? 1 : 0;
    }
    frames += seq.size();
  }
  return pass_if(identical == static_cast<int>(specs.size()),
                 fmt("%d/%zu sequences bit-identical over %zu frames (%d level changes in the equal-padding runs)",
                     identical, specs.size(), frames, level_changes));
}

Outcome fast_motion() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Sequence> seqs;
  for (const auto& spec : synthetic_suite("synth-fast")) seqs.push_back(generate_synthetic(spec));
  const auto report =
      run_ope({make_dcf_tracker("fixed", fixed_config()), make_dcf_tracker("sasa", preset("dcf_sasa"))}, seqs);
  std::ostringstream per;
  bool ok = report.failures == 0;
  for (const auto& seq : seqs) {
    const SequenceResult* fixed = nullptr;
    const SequenceResult* sasa = nullptr;
    for (const auto& r : report.results) {
      if (r.sequence != seq.name()) continue;
      (r.tracker == "fixed" ? fixed : sasa) = &r;
    }
    if (!fixed || !sasa || fixed->error || sasa->error) {
      ok = false;
      continue;
    }
    const auto& gt = seq.groundtruth();
    const double sasa_mean = mean_iou(sasa->run.boxes, gt, 0);
    const double fixed_tail = mean_iou(fixed->run.boxes, gt, gt.size() - kFastTail);
    ok = ok && gt.size() >= kFastMinFrames && sasa_mean >= kFastMinMeanIou && fixed_tail < kFastMaxBaselineTailIou;
    per << fmt(" %s: sasa %.3f / fixed tail %.3f;", seq.name().c_str(), sasa_mean, fixed_tail);
  }
  const double elapsed = seconds_since(t0);
  ok = ok && elapsed < kFastBudgetS;
  return pass_if(ok, fmt("%zu sequences x %zu frames (need mean IoU >= %.1f, baseline last-%zu < %.1f):", seqs.size(),
                         seqs.empty() ? std::size_t{0} : seqs[0].size(), kFastMinMeanIou, kFastTail,
                         kFastMaxBaselineTailIou) +
                         per.str() + fmt(" %.1f s (budget %.0f s)", elapsed, kFastBudgetS));
}

Outcome overhead() {
  SyntheticSpec spec;
  spec.name = "steady";
  spec.frames = 90;
  spec.target_w = 50;
  spec.target_h = 50;
  spec.velocity = {1.0, 0.5};
  spec.seed = 11;
  const Sequence seq = generate_synthetic(spec);
  std::vector<Image> frames;
  for (std::size_t i = 0; i < seq.size(); ++i) frames.push_back(seq.frame(i));

  auto mean_ms = [&](const TrackerConfig& cfg, bool& resized) {
    const auto run = run_sequence(frames, seq.groundtruth()[0], cfg);
    double sum = 0.0;
    for (std::size_t i = 1; i < run.diagnostics.size(); ++i) {
      sum += run.diagnostics[i].ms;
      resized = resized || run.diagnostics[i].resized;
    }
    return sum / static_cast<double>(run.diagnostics.size() - 1);
  };
  std::vector<double> fixed_ms, sasa_ms;
  bool resized = false, ignored = false;
  mean_ms(preset("dcf_sasa"), ignored);  // warm the FFT plan cache
  for (int k = 0; k < kOverheadRepeats; ++k) {
    fixed_ms.push_back(mean_ms(fixed_config(), ignored));
    sasa_ms.push_back(mean_ms(preset("dcf_sasa"), resized));
  }
  // Best of the interleaved repeats: scheduler noise only ever adds time.
  const double f = *std::min_element(fixed_ms.begin(), fixed_ms.end());
  const double s = *std::min_element(sasa_ms.begin(), sasa_ms.end());
  const double fps = 1000.0 / s;
  return pass_if(!resized && s <= kOverheadRatio * f,
                 fmt("50x50 target, %zu frames, no resize: %s; best-of-%d ms/frame sasa %.3f vs fixed %.3f "
                     "(ratio %.3f, limit %.2f); sasa %.0f fps (soft target %.0f: %s)",
                     seq.size(), resized ? "violated" : "yes", kOverheadRepeats, s, f, s / f, kOverheadRatio, fps, kSoftFps,
                     fps >= kSoftFps ? "met" : "not met"));
}

Outcome metrics() {
  std::vector<BoundingBox> g3(5, BoundingBox{10, 10, 3, 1});
  std::vector<BoundingBox> p3(5, BoundingBox{11, 10, 3, 1});
  const double auc = evaluate(p3, g3).auc;
  std::vector<BoundingBox> g20(4, BoundingBox{50, 50, 2, 1});
  std::vector<BoundingBox> p20(4, BoundingBox{62, 66, 2, 1});
  const auto e20 = evaluate(p20, g20);
  const bool inclusive = e20.precision_at_20 == 1.0 && e20.precision[19] == 0.0;

  std::vector<Sequence> seqs;
  for (const auto& spec : synthetic_suite("synth-slow")) seqs.push_back(generate_synthetic(spec));
  const auto report = run_ope({make_oracle_tracker()}, seqs);
  const double oracle_auc = report.overall.at("oracle").auc;
  return pass_if(std::abs(auc - 11.0 / 21.0) <= kAucTol && inclusive && oracle_auc == 1.0,
                 fmt("constant IoU 0.5 AUC %.15f (want 11/21); error exactly 20 px counted at 20: %s; "
                     "oracle AUC %.3f",
                     auc, inclusive ? "yes" : "no", oracle_auc));
}

Outcome otb_fast_motion() {
  const char* root = std::getenv("ADTRACK_OTB_DIR");
  if (!root || !*root) return {Verdict::Skip, "set ADTRACK_OTB_DIR to an OTB-layout directory to run"};
  std::vector<Sequence> seqs;
  for (const auto& dir : find_otb_sequences(root)) {
    Sequence s = load_otb_sequence(dir);
    if (s.has_attribute("fast-motion")) seqs.push_back(std::move(s));
  }
  if (seqs.empty()) return {Verdict::Skip, std::string("no fast-motion sequences under ") + root};
  const auto report =
      run_ope({make_dcf_tracker("fixed", fixed_config()), make_dcf_tracker("sasa", preset("dcf_sasa"))}, seqs);
  const double f = report.overall.at("fixed").precision_at_20;
  const double s = report.overall.at("sasa").precision_at_20;
  return pass_if(report.failures == 0 && s >= f,
                 fmt("%zu fast-motion sequences: precision@20 sasa %.3f vs fixed %.3f, %zu failures", seqs.size(), s,
                     f, report.failures));
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "detect matches spatial circular cross-correlation", correlation_equivalence},
      {2, "self-detection returns the label", self_detection},
      {3, "repeated updates follow the geometric series", update_convergence},
      {4, "polynomial extrapolation", polynomial_extrapolation},
      {5, "motion criterion", motion_criterion},
      {6, "controller transition table and shrink dwell", controller_table},
      {7, "resize round trips and interpolation", resize_round_trip},
      {8, "equal paddings reproduce the fixed tracker", baseline_containment},
      {9, "fast-motion efficacy on the synthetic suite", fast_motion},
      {10, "adaptive overhead without resizes", overhead},
      {11, "benchmark metric fixtures", metrics},
      {12, "fast-motion precision on OTB data", otb_fast_motion},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {Verdict::Fail, std::string("threw: ") + e.what()};
    }
    const char* tag = o.verdict == Verdict::Pass ? "PASS" : o.verdict == Verdict::Fail ? "FAIL" : "SKIP";
    failed += o.verdict == Verdict::Fail ? 1 : 0;
    std::printf("%s %2d %s: %s\n", tag, c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
