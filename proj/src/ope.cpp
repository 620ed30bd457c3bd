#include "adtrack/ope.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace adtrack {

namespace fs = std::filesystem;

NamedTracker make_dcf_tracker(std::string name, TrackerConfig cfg) {
  validate(cfg);
  return {std::move(name), [cfg](const Sequence& seq) {
            return run_sequence(
                seq.size(), [&seq](std::size_t i) { return seq.frame(i); }, seq.groundtruth().front(), cfg);
          }};
}

NamedTracker make_oracle_tracker(std::string name) {
  return {std::move(name), [](const Sequence& seq) {
            SequenceRun run;
            run.boxes = seq.groundtruth();
            for (std::size_t i = 0; i < seq.size(); ++i) {
              FrameDiagnostics d;
              d.frame_index = static_cast<int>(i + 1);
              d.box = seq.groundtruth()[i];
              run.diagnostics.push_back(d);
            }
            return run;
          }};
}

namespace {

double run_fps(const SequenceRun& run) {
  double ms = 0.0;
  for (const auto& d : run.diagnostics) ms += d.ms;
  return ms > 0.0 ? 1000.0 * static_cast<double>(run.diagnostics.size()) / ms : 0.0;
}

}  // namespace

OpeReport run_ope(const std::vector<NamedTracker>& trackers, const std::vector<Sequence>& sequences,
                  const OpeOptions& options) {
  if (trackers.empty()) throw std::invalid_argument("run_ope: no trackers");
  if (sequences.empty()) throw std::invalid_argument("run_ope: no sequences");

  // results[s * T + t]
  std::vector<SequenceResult> results(sequences.size() * trackers.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t s = next++; s < sequences.size(); s = next++) {
      const Sequence& seq = sequences[s];
      for (std::size_t t = 0; t < trackers.size(); ++t) {
        SequenceResult& r = results[s * trackers.size() + t];
        r.tracker = trackers[t].name;
        r.sequence = seq.name();
        r.attributes = seq.attributes();
        try {
          r.run = trackers[t].run(seq);
          r.eval = evaluate(r.run.boxes, seq.groundtruth());
          r.eval.mean_fps = run_fps(r.run);
        } catch (const std::exception& e) {
          r.run = {};
          r.error = e.what();
        }
      }
    }
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(sequences.size()));
  std::vector<std::jthread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();

  OpeReport report;
  for (const auto& t : trackers) report.trackers.push_back(t.name);
  std::map<std::string, std::size_t> order;
  for (std::size_t i = 0; i < report.trackers.size(); ++i) order.emplace(report.trackers[i], i);
  std::stable_sort(results.begin(), results.end(), [&](const SequenceResult& a, const SequenceResult& b) {
    if (a.tracker != b.tracker) return order[a.tracker] < order[b.tracker];
    return a.sequence < b.sequence;
  });

  for (const auto& name : report.trackers) {
    std::vector<EvalResult> ok;
    std::map<std::string, std::vector<EvalResult>> per_attr;
    for (const auto& r : results) {
      if (r.tracker != name) continue;
      if (r.error) {
        ++report.failures;
        continue;
      }
      ok.push_back(r.eval);
      for (const auto& a : options.attributes) {
        if (r.attributes.contains(a)) per_attr[a].push_back(r.eval);
      }
    }
    if (!ok.empty()) report.overall[name] = average(ok);
    for (const auto& [attr, evals] : per_attr) report.by_attribute[attr][name] = average(evals);
  }
  report.results = std::move(results);
  return report;
}

void write_frames_csv(std::ostream& out, const std::string& tracker, const std::string& sequence,
                      const SequenceRun& run, bool header) {
  if (header) out << "tracker,sequence,frame,x,y,w,h,cx,cy,zeta,level,psr,resized,low_confidence,ms\n";
  out << std::setprecision(10);
  for (const auto& d : run.diagnostics) {
    const OtbRect r = to_otb_rect(d.box);
    out << tracker << ',' << sequence << ',' << d.frame_index << ',' << r.x << ',' << r.y << ',' << r.w << ','
        << r.h << ',' << d.box.cx << ',' << d.box.cy << ',' << d.zeta << ',' << to_string(d.level) << ','
        << d.psr << ',' << (d.resized ? 1 : 0) << ',' << (d.low_confidence ? 1 : 0) << ',' << d.ms << '\n';
  }
}

namespace {

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << std::setprecision(10);
  return out;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

// One plot of curves over x in [x0, x1] and y in [0, 1].
void write_svg_plot(const fs::path& path, const std::string& title, const std::string& xlabel, double x0, double x1,
                    const std::vector<std::pair<std::string, std::vector<double>>>& curves,
                    const std::vector<double>& xs) {
  constexpr double W = 480, H = 360, L = 60, R = 20, T = 40, B = 50;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - y * (H - T - B); };
  auto out = open_out(path);
  out << std::fixed << std::setprecision(2);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n";
  out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 10; i += 2) {
    const double y = i / 10.0;
    out << "<text x=\"" << L - 6 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << y << "</text>\n";
    const double x = x0 + (x1 - x0) * i / 10.0;
    out << "<text x=\"" << px(x) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"11\">" << x << "</text>\n";
  }
  out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"12\">" << xlabel << "</text>\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = kPalette[c % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) out << px(xs[i]) << ',' << py(curves[c].second[i]) << ' ';
    out << "\"/>\n";
    const double ly = T + 16 + 16 * static_cast<double>(c);
    out << "<line x1=\"" << W - R - 170 << "\" y1=\"" << ly << "\" x2=\"" << W - R - 150 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << W - R - 145 << "\" y=\"" << ly + 4 << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << curves[c].first << "</text>\n";
  }
  out << "</svg>\n";
}

std::string bracket(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), " [%.3f]", v);
  return buf;
}

}  // namespace

void write_ope_outputs(const OpeReport& report, const fs::path& dir) {
  fs::create_directories(dir);
  {
    auto out = open_out(dir / "summary.csv");
    out << "tracker,sequences,frames,precision_at_20,auc,fps\n";
    for (const auto& name : report.trackers) {
      const auto it = report.overall.find(name);
      if (it == report.overall.end()) continue;
      std::size_t n = 0;
      for (const auto& r : report.results) n += (r.tracker == name && !r.error) ? 1 : 0;
      out << name << ',' << n << ',' << it->second.frames << ',' << it->second.precision_at_20 << ','
          << it->second.auc << ',' << it->second.mean_fps << '\n';
    }
  }
  {
    auto out = open_out(dir / "curves.csv");
    out << "tracker,subset,kind,threshold,value\n";
    auto emit = [&](const std::string& tracker, const std::string& subset, const EvalResult& e) {
      for (int i = 0; i < kPrecisionSamples; ++i) {
        out << tracker << ',' << subset << ",precision," << precision_threshold(i) << ',' << e.precision[i] << '\n';
      }
      for (int i = 0; i < kSuccessSamples; ++i) {
        out << tracker << ',' << subset << ",success," << success_threshold(i) << ',' << e.success[i] << '\n';
      }
    };
    for (const auto& [name, e] : report.overall) emit(name, "all", e);
    for (const auto& [attr, per] : report.by_attribute) {
      for (const auto& [name, e] : per) emit(name, attr, e);
    }
  }
  {
    auto out = open_out(dir / "sequences.csv");
    out << "tracker,sequence,frames,precision_at_20,auc,fps,error\n";
    for (const auto& r : report.results) {
      out << r.tracker << ',' << r.sequence << ',' << r.eval.frames << ',' << r.eval.precision_at_20 << ','
          << r.eval.auc << ',' << r.eval.mean_fps << ',' << (r.error ? "\"" + *r.error + "\"" : "") << '\n';
    }
  }
  {
    auto out = open_out(dir / "frames.csv");
    bool header = true;
    for (const auto& r : report.results) {
      if (r.error) continue;
      write_frames_csv(out, r.tracker, r.sequence, r.run, header);
      header = false;
    }
  }
  if (!report.by_attribute.empty()) {
    auto out = open_out(dir / "attributes.csv");
    out << "attribute,tracker,frames,precision_at_20,auc\n";
    for (const auto& [attr, per] : report.by_attribute) {
      for (const auto& [name, e] : per) {
        out << attr << ',' << name << ',' << e.frames << ',' << e.precision_at_20 << ',' << e.auc << '\n';
      }
    }
  }

  std::vector<std::pair<std::string, std::vector<double>>> prec;
  std::vector<std::pair<std::string, std::vector<double>>> succ;
  for (const auto& name : report.trackers) {
    const auto it = report.overall.find(name);
    if (it == report.overall.end()) continue;
    prec.emplace_back(name + bracket(it->second.precision_at_20), it->second.precision);
    succ.emplace_back(name + bracket(it->second.auc), it->second.success);
  }
  std::vector<double> px(kPrecisionSamples);
  for (int i = 0; i < kPrecisionSamples; ++i) px[i] = precision_threshold(i);
  std::vector<double> sx(kSuccessSamples);
  for (int i = 0; i < kSuccessSamples; ++i) sx[i] = success_threshold(i);
  write_svg_plot(dir / "precision.svg", "Precision plots of OPE", "Location error threshold (px)", 0, 50, prec, px);
  write_svg_plot(dir / "success.svg", "Success plots of OPE", "Overlap threshold", 0, 1, succ, sx);
}

std::string format_summary(const OpeReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(20) << "tracker" << std::right << std::setw(10) << "prec@20" << std::setw(10)
      << "AUC" << std::setw(10) << "fps" << '\n';
  out << std::fixed << std::setprecision(3);
  auto rows = [&](const std::map<std::string, EvalResult>& table) {
    for (const auto& name : report.trackers) {
      const auto it = table.find(name);
      if (it == table.end()) continue;
      out << std::left << std::setw(20) << name << std::right << std::setw(10) << it->second.precision_at_20
          << std::setw(10) << it->second.auc << std::setw(10) << std::setprecision(1) << it->second.mean_fps
          << std::setprecision(3) << '\n';
    }
  };
  rows(report.overall);
  for (const auto& [attr, per] : report.by_attribute) {
    out << "-- " << attr << '\n';
    rows(per);
  }
  if (report.failures) out << report.failures << " sequence run(s) failed\n";
  return out.str();
}

}  // namespace adtrack
