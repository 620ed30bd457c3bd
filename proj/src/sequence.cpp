#include "adtrack/sequence.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace adtrack {

namespace fs = std::filesystem;

// OTB files count pixels from 1; boxes use 0-based pixel centers.
BoundingBox from_otb_rect(const OtbRect& r) {
  return {r.x - 1.0 + (r.w - 1.0) / 2.0, r.y - 1.0 + (r.h - 1.0) / 2.0, r.w, r.h};
}

OtbRect to_otb_rect(const BoundingBox& b) {
  return {b.cx + 1.0 - (b.w - 1.0) / 2.0, b.cy + 1.0 - (b.h - 1.0) / 2.0, b.w, b.h};
}

OtbRect parse_otb_rect(std::string_view line) {
  double v[4];
  int n = 0;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ',' || c == '\t' || c == ' ' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !is_sep(line[j])) ++j;
    if (n == 4) throw std::invalid_argument("expected 4 values, found more");
    const auto token = line.substr(i, j - i);
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v[n]);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size() || !std::isfinite(v[n])) {
      throw std::invalid_argument("not a number: '" + std::string(token) + "'");
    }
    ++n;
    i = j;
  }
  if (n != 4) throw std::invalid_argument("expected 4 values, found " + std::to_string(n));
  return {v[0], v[1], v[2], v[3]};
}

Sequence Sequence::in_memory(std::string name, std::vector<Image> frames, std::vector<BoundingBox> groundtruth,
                             std::set<std::string> attributes) {
  if (frames.size() != groundtruth.size()) {
    throw std::invalid_argument("sequence " + name + ": " + std::to_string(frames.size()) + " frames but " +
                                std::to_string(groundtruth.size()) + " ground-truth boxes");
  }
  Sequence s;
  s.name_ = std::move(name);
  s.frames_ = std::make_shared<const std::vector<Image>>(std::move(frames));
  s.groundtruth_ = std::move(groundtruth);
  s.attributes_ = std::move(attributes);
  return s;
}

Sequence Sequence::from_files(std::string name, std::vector<fs::path> frames, std::vector<BoundingBox> groundtruth,
                              std::set<std::string> attributes) {
  if (frames.size() != groundtruth.size()) {
    throw std::invalid_argument("sequence " + name + ": " + std::to_string(frames.size()) + " frames but " +
                                std::to_string(groundtruth.size()) + " ground-truth boxes");
  }
  Sequence s;
  s.name_ = std::move(name);
  s.paths_ = std::make_shared<const std::vector<fs::path>>(std::move(frames));
  s.groundtruth_ = std::move(groundtruth);
  s.attributes_ = std::move(attributes);
  return s;
}

Image Sequence::frame(std::size_t i) const {
  if (i >= size()) throw std::out_of_range("sequence " + name_ + ": frame index out of range");
  if (frames_) return (*frames_)[i];
  return read_image((*paths_)[i]);
}

Image read_image(const fs::path& path) {
  const cv::Mat mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (mat.empty()) throw std::runtime_error("cannot read image " + path.string());
  cv::Mat u8;
  if (mat.depth() == CV_16U) {
    mat.convertTo(u8, CV_8U, 1.0 / 257.0);
  } else {
    u8 = mat;
  }
  const int channels = u8.channels() == 1 ? 1 : 3;
  Image img(u8.cols, u8.rows, channels);
  for (int y = 0; y < u8.rows; ++y) {
    const auto* row = u8.ptr<unsigned char>(y);
    for (int x = 0; x < u8.cols; ++x) {
      if (channels == 1) {
        img.at(x, y) = row[x] / 255.0f;
      } else {
        const auto* px = row + x * u8.channels();
        // OpenCV stores BGR(A).
        img.at(x, y, 0) = px[2] / 255.0f;
        img.at(x, y, 1) = px[1] / 255.0f;
        img.at(x, y, 2) = px[0] / 255.0f;
      }
    }
  }
  return img;
}

void write_image(const fs::path& path, const Image& img) {
  cv::Mat mat(img.height(), img.width(), img.channels() == 1 ? CV_8UC1 : CV_8UC3);
  auto quantize = [](float v) {
    return static_cast<unsigned char>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f));
  };
  for (int y = 0; y < img.height(); ++y) {
    auto* row = mat.ptr<unsigned char>(y);
    for (int x = 0; x < img.width(); ++x) {
      if (img.channels() == 1) {
        row[x] = quantize(img.at(x, y));
      } else {
        row[3 * x + 0] = quantize(img.at(x, y, 2));
        row[3 * x + 1] = quantize(img.at(x, y, 1));
        row[3 * x + 2] = quantize(img.at(x, y, 0));
      }
    }
  }
  if (!cv::imwrite(path.string(), mat)) throw std::runtime_error("cannot write image " + path.string());
}

namespace {

bool is_image_file(const fs::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".jpg" || ext == ".jpeg" || ext == ".png" || ext == ".bmp" || ext == ".pgm" || ext == ".ppm";
}

std::set<std::string> read_attributes(const fs::path& file) {
  std::set<std::string> out;
  std::ifstream in(file);
  std::string token;
  while (in >> token) {
    std::stringstream ss(token);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty()) continue;
      // OTB attribute files list abbreviations such as FM and MB.
      if (part == "FM") part = "fast-motion";
      if (part == "MB") part = "motion-blur";
      out.insert(part);
    }
  }
  return out;
}

}  // namespace

Sequence load_otb_sequence(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error("sequence directory not found: " + dir.string());
  const fs::path img_dir = dir / "img";
  const fs::path gt_file = dir / "groundtruth_rect.txt";
  if (!fs::is_directory(img_dir)) throw std::runtime_error("missing image folder: " + img_dir.string());
  if (!fs::is_regular_file(gt_file)) throw std::runtime_error("missing ground truth: " + gt_file.string());

  std::vector<fs::path> frames;
  for (const auto& entry : fs::directory_iterator(img_dir)) {
    if (entry.is_regular_file() && is_image_file(entry.path())) frames.push_back(entry.path());
  }
  std::sort(frames.begin(), frames.end());
  if (frames.empty()) throw std::runtime_error("no frames in " + img_dir.string());

  std::vector<BoundingBox> gt;
  std::ifstream in(gt_file);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const OtbRect r = parse_otb_rect(line);
      if (!(r.w > 0 && r.h > 0)) throw std::invalid_argument("non-positive box extent");
      gt.push_back(from_otb_rect(r));
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(gt_file.string() + ": line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (gt.size() != frames.size()) {
    throw std::runtime_error("sequence " + dir.filename().string() + ": " + std::to_string(frames.size()) +
                             " frames but " + std::to_string(gt.size()) + " ground-truth lines");
  }
  std::set<std::string> attributes;
  if (fs::is_regular_file(dir / "attributes.txt")) attributes = read_attributes(dir / "attributes.txt");
  return Sequence::from_files(dir.filename().string(), std::move(frames), std::move(gt), std::move(attributes));
}

void write_otb_sequence(const fs::path& dir, const Sequence& seq) {
  fs::create_directories(dir / "img");
  for (std::size_t i = 0; i < seq.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "%04zu.png", i + 1);
    write_image(dir / "img" / name, seq.frame(i));
  }
  std::ofstream gt(dir / "groundtruth_rect.txt");
  gt.precision(17);
  for (const auto& b : seq.groundtruth()) {
    const OtbRect r = to_otb_rect(b);
    gt << r.x << ',' << r.y << ',' << r.w << ',' << r.h << '\n';
  }
  if (!gt) throw std::runtime_error("cannot write ground truth in " + dir.string());
  std::ofstream attrs(dir / "attributes.txt");
  for (const auto& a : seq.attributes()) attrs << a << '\n';
}

std::vector<fs::path> find_otb_sequences(const fs::path& root) {
  if (!fs::is_directory(root)) throw std::runtime_error("dataset path not found: " + root.string());
  if (fs::is_regular_file(root / "groundtruth_rect.txt")) return {root};
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && fs::is_regular_file(entry.path() / "groundtruth_rect.txt")) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) throw std::runtime_error("no OTB sequences under " + root.string());
  return out;
}

}  // namespace adtrack
