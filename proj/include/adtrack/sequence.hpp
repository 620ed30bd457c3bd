#pragma once

#include <filesystem>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "adtrack/features.hpp"
#include "adtrack/tracker.hpp"

namespace adtrack {

/// OTB rectangle: 1-based top-left corner and extent.
struct OtbRect {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
};

/// Center as in the OTB toolkit, x + (w - 1) / 2, shifted to 0-based pixels.
BoundingBox from_otb_rect(const OtbRect& r);
OtbRect to_otb_rect(const BoundingBox& b);

/// Parses "x,y,w,h" with comma, tab or space separators. Throws
/// std::invalid_argument on anything else.
OtbRect parse_otb_rect(std::string_view line);

/// Frames plus per-frame ground truth. Frames are either held in memory or
/// decoded from disk on access.
class Sequence {
 public:
  Sequence() = default;
  static Sequence in_memory(std::string name, std::vector<Image> frames, std::vector<BoundingBox> groundtruth,
                            std::set<std::string> attributes = {});
  static Sequence from_files(std::string name, std::vector<std::filesystem::path> frames,
                             std::vector<BoundingBox> groundtruth, std::set<std::string> attributes = {});

  const std::string& name() const { return name_; }
  std::size_t size() const { return groundtruth_.size(); }
  Image frame(std::size_t i) const;
  const std::vector<BoundingBox>& groundtruth() const { return groundtruth_; }
  const std::set<std::string>& attributes() const { return attributes_; }
  bool has_attribute(const std::string& a) const { return attributes_.contains(a); }

 private:
  std::string name_;
  std::shared_ptr<const std::vector<Image>> frames_;
  std::shared_ptr<const std::vector<std::filesystem::path>> paths_;
  std::vector<BoundingBox> groundtruth_;
  std::set<std::string> attributes_;
};

/// 8-bit image I/O; color files are returned as 3-channel RGB.
Image read_image(const std::filesystem::path& path);
void write_image(const std::filesystem::path& path, const Image& img);

/// Loads an OTB-layout directory: `img/` with numbered frames,
/// `groundtruth_rect.txt` with one box per line and an optional
/// `attributes.txt` of whitespace/comma separated tags (OTB's FM and MB map to
/// fast-motion and motion-blur).
Sequence load_otb_sequence(const std::filesystem::path& dir);

/// Writes the same layout with zero-padded PNG frames.
void write_otb_sequence(const std::filesystem::path& dir, const Sequence& seq);

/// Subdirectories of `root` that look like OTB sequences, sorted by name; a
/// sequence directory itself yields just `root`.
std::vector<std::filesystem::path> find_otb_sequences(const std::filesystem::path& root);

}  // namespace adtrack
