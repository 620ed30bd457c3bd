#include "adtrack/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>

namespace adtrack {

using nlohmann::json;

namespace {

json number_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double read_number(const json& j, const std::string& key) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw std::invalid_argument("config: '" + key + "' must be a number");
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw std::invalid_argument("config: unknown key '" + where + key + "'");
  }
}

}  // namespace

std::string to_string(ResizeMethod m) { return m == ResizeMethod::Frequency ? "frequency" : "spatial"; }

ResizeMethod parse_resize_method(const std::string& text) {
  if (text == "frequency") return ResizeMethod::Frequency;
  if (text == "spatial") return ResizeMethod::Spatial;
  throw std::invalid_argument("unknown resize method '" + text + "'");
}

json to_json(const TrackerConfig& cfg) {
  json j;
  j["paddings"] = cfg.paddings;
  j["adaptive"] = cfg.adaptive;
  j["thresholds"] = {
      {"t1", number_or_inf(cfg.thresholds.t1)},
      {"t2", number_or_inf(cfg.thresholds.t2)},
      {"t3", number_or_inf(cfg.thresholds.t3)},
      {"t4", number_or_inf(cfg.thresholds.t4)},
      {"mode", std::string(to_string(cfg.thresholds.mode))},
      {"shrink_dwell", cfg.thresholds.shrink_dwell},
      {"grow_dwell", cfg.thresholds.grow_dwell},
  };
  j["lambda"] = cfg.lambda;
  j["eta"] = cfg.eta;
  j["fit_order"] = cfg.fit_order;
  j["history"] = cfg.history;
  j["resize_method"] = to_string(cfg.resize_method);
  j["cell"] = cfg.features.cell;
  j["gray_channel"] = cfg.features.gray_channel;
  j["sigma_factor"] = cfg.sigma_factor;
  j["confidence_gate"] = cfg.confidence_gate ? json(*cfg.confidence_gate) : json(nullptr);
  j["max_cells"] = cfg.max_cells;
  return j;
}

TrackerConfig config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  reject_unknown(j,
                 {"base", "paddings", "adaptive", "thresholds", "lambda", "eta", "fit_order", "history",
                  "resize_method", "cell", "gray_channel", "sigma_factor", "confidence_gate", "max_cells"},
                 "");
  TrackerConfig cfg = preset(j.value("base", std::string("dcf_sasa")));
  try {
    if (j.contains("paddings")) {
      const auto& p = j.at("paddings");
      if (!p.is_array() || p.size() != 3) throw std::invalid_argument("config: 'paddings' must hold 3 numbers");
      for (std::size_t i = 0; i < 3; ++i) cfg.paddings[i] = read_number(p[i], "paddings");
    }
    if (j.contains("adaptive")) cfg.adaptive = j.at("adaptive").get<bool>();
    if (j.contains("thresholds")) {
      const auto& t = j.at("thresholds");
      reject_unknown(t, {"t1", "t2", "t3", "t4", "mode", "shrink_dwell", "grow_dwell"}, "thresholds.");
      if (t.contains("t1")) cfg.thresholds.t1 = read_number(t.at("t1"), "thresholds.t1");
      if (t.contains("t2")) cfg.thresholds.t2 = read_number(t.at("t2"), "thresholds.t2");
      if (t.contains("t3")) cfg.thresholds.t3 = read_number(t.at("t3"), "thresholds.t3");
      if (t.contains("t4")) cfg.thresholds.t4 = read_number(t.at("t4"), "thresholds.t4");
      if (t.contains("mode")) cfg.thresholds.mode = parse_threshold_mode(t.at("mode").get<std::string>());
      if (t.contains("shrink_dwell")) cfg.thresholds.shrink_dwell = t.at("shrink_dwell").get<int>();
      if (t.contains("grow_dwell")) cfg.thresholds.grow_dwell = t.at("grow_dwell").get<int>();
    }
    if (j.contains("lambda")) cfg.lambda = read_number(j.at("lambda"), "lambda");
    if (j.contains("eta")) cfg.eta = read_number(j.at("eta"), "eta");
    if (j.contains("fit_order")) cfg.fit_order = j.at("fit_order").get<int>();
    if (j.contains("history")) cfg.history = j.at("history").get<std::size_t>();
    if (j.contains("resize_method")) cfg.resize_method = parse_resize_method(j.at("resize_method").get<std::string>());
    if (j.contains("cell")) cfg.features.cell = j.at("cell").get<int>();
    if (j.contains("gray_channel")) cfg.features.gray_channel = j.at("gray_channel").get<bool>();
    if (j.contains("sigma_factor")) cfg.sigma_factor = read_number(j.at("sigma_factor"), "sigma_factor");
    if (j.contains("confidence_gate")) {
      const auto& g = j.at("confidence_gate");
      if (g.is_null()) {
        cfg.confidence_gate.reset();
      } else {
        cfg.confidence_gate = read_number(g, "confidence_gate");
      }
    }
    if (j.contains("max_cells")) cfg.max_cells = j.at("max_cells").get<int>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

json load_config_json(const std::string& source) {
  for (const auto& name : preset_names()) {
    if (source == name) return to_json(preset(name));
  }
  std::ifstream in(source);
  if (!in) throw std::invalid_argument("config: '" + source + "' is neither a preset nor a readable file");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("config: cannot parse " + source + ": " + e.what());
  }
}

void apply_override(json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw std::invalid_argument("override '" + assignment + "' is not key=value");
  std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  std::string pointer;
  std::size_t start = 0;
  while (start <= key.size()) {
    const auto dot = key.find('.', start);
    pointer += "/" + key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::exception&) {
    value = raw;
  }
  try {
    j[json::json_pointer(pointer)] = value;
  } catch (const json::exception& e) {
    throw std::invalid_argument("override '" + assignment + "': " + e.what());
  }
}

json to_json(const SyntheticSpec& s) {
  json j;
  j["name"] = s.name;
  j["frames"] = s.frames;
  j["width"] = s.width;
  j["height"] = s.height;
  j["target_w"] = s.target_w;
  j["target_h"] = s.target_h;
  j["start"] = s.start ? json::array({s.start->x, s.start->y}) : json(nullptr);
  j["path"] = to_string(s.path);
  j["profile"] = to_string(s.profile);
  j["velocity"] = json::array({s.velocity.x, s.velocity.y});
  j["acceleration"] = s.acceleration;
  j["max_speed"] = s.max_speed;
  j["go_frames"] = s.go_frames;
  j["stop_frames"] = s.stop_frames;
  j["orbit_radius"] = s.orbit_radius;
  j["blur"] = s.blur;
  j["seed"] = s.seed;
  j["attributes"] = s.attributes;
  return j;
}

SyntheticSpec synthetic_spec_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("synthetic spec: expected a JSON object");
  reject_unknown(j,
                 {"name", "frames", "width", "height", "target_w", "target_h", "start", "path", "profile", "velocity",
                  "acceleration", "max_speed", "go_frames", "stop_frames", "orbit_radius", "blur", "seed",
                  "attributes"},
                 "");
  SyntheticSpec s;
  try {
    s.name = j.value("name", s.name);
    s.frames = j.value("frames", s.frames);
    s.width = j.value("width", s.width);
    s.height = j.value("height", s.height);
    s.target_w = j.value("target_w", s.target_w);
    s.target_h = j.value("target_h", s.target_h);
    if (j.contains("start") && !j.at("start").is_null()) {
      const auto& p = j.at("start");
      s.start = Point2d{p.at(0).get<double>(), p.at(1).get<double>()};
    }
    if (j.contains("path")) s.path = parse_motion_path(j.at("path").get<std::string>());
    if (j.contains("profile")) s.profile = parse_speed_profile(j.at("profile").get<std::string>());
    if (j.contains("velocity")) {
      const auto& v = j.at("velocity");
      s.velocity = {v.at(0).get<double>(), v.at(1).get<double>()};
    }
    s.acceleration = j.value("acceleration", s.acceleration);
    s.max_speed = j.value("max_speed", s.max_speed);
    s.go_frames = j.value("go_frames", s.go_frames);
    s.stop_frames = j.value("stop_frames", s.stop_frames);
    s.orbit_radius = j.value("orbit_radius", s.orbit_radius);
    s.blur = j.value("blur", s.blur);
    s.seed = j.value("seed", s.seed);
    if (j.contains("attributes")) s.attributes = j.at("attributes").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("synthetic spec: ") + e.what());
  }
  return s;
}

}  // namespace adtrack
