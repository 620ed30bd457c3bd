#include "adtrack/dcf.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "adtrack/spectral.hpp"

namespace adtrack {
namespace {

void require_same_grid(GridSize a, GridSize b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": grid " + std::to_string(a.rows) + "x" +
                                std::to_string(a.cols) + " does not match " +
                                std::to_string(b.rows) + "x" + std::to_string(b.cols));
  }
}

void require_compatible(const FilterModel& model, const FeatureMap& feat, const char* what) {
  require_same_grid(feat.grid_size(), model.grid_size(), what);
  if (feat.depth() != model.depth()) {
    throw std::invalid_argument(std::string(what) + ": feature depth " + std::to_string(feat.depth()) +
                                " does not match model depth " + std::to_string(model.depth()));
  }
}

// Returns conj(G) F^l per channel and sum_k |F^k|^2.
void sample_statistics(const FeatureMap& feat, const Spectrum& label, std::vector<Spectrum>& num,
                       Spectrum& den) {
  const auto spectra = feature_spectra(feat);
  num.clear();
  num.reserve(spectra.size());
  den = Spectrum(label.size());
  for (const auto& f : spectra) {
    Spectrum a(label.size());
    for (std::size_t i = 0; i < f.count(); ++i) {
      a[i] = std::conj(label[i]) * f[i];
      den[i] += Complex(std::norm(f[i]), 0.0);
    }
    num.push_back(std::move(a));
  }
}

}  // namespace

std::vector<Spectrum> feature_spectra(const FeatureMap& feat) {
  std::vector<Spectrum> out;
  out.reserve(feat.depth());
  for (int l = 0; l < feat.depth(); ++l) out.push_back(dft2(feat.channel(l)));
  return out;
}

FilterModel train_init(const FeatureMap& feat, const Spectrum& label, double lambda, double eta) {
  require_same_grid(label.size(), feat.grid_size(), "train_init");
  if (!(lambda >= 0.0)) throw std::invalid_argument("train_init: lambda must be >= 0");
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("train_init: eta must be in [0,1]");
  FilterModel model;
  model.lambda = lambda;
  model.eta = eta;
  sample_statistics(feat, label, model.numerator, model.denominator);
  return model;
}

FilterModel update(const FilterModel& model, const FeatureMap& feat, const Spectrum& label) {
  require_compatible(model, feat, "update");
  require_same_grid(label.size(), model.grid_size(), "update");
  if (model.eta == 0.0) return model;

  std::vector<Spectrum> num;
  Spectrum den;
  sample_statistics(feat, label, num, den);
  if (model.eta == 1.0) {
    FilterModel out = model;
    out.numerator = std::move(num);
    out.denominator = std::move(den);
    return out;
  }

  const double keep = 1.0 - model.eta;
  FilterModel out = model;
  for (int l = 0; l < model.depth(); ++l) {
    auto& a = out.numerator[l];
    for (std::size_t i = 0; i < a.count(); ++i) a[i] = keep * a[i] + model.eta * num[l][i];
  }
  // The old energy is projected first; this only changes a freshly resized
  // denominator, which can carry small negative or complex bins.
  for (std::size_t i = 0; i < den.count(); ++i) {
    out.denominator[i] = keep * std::max(0.0, out.denominator[i].real()) + model.eta * den[i];
  }
  return out;
}

double peak_to_sidelobe(const RealGrid& response, GridIndex peak) {
  constexpr int kHalfWindow = 5;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;
  for (int r = 0; r < response.rows(); ++r) {
    int dr = std::abs(r - peak.row);
    dr = std::min(dr, response.rows() - dr);
    for (int c = 0; c < response.cols(); ++c) {
      int dc = std::abs(c - peak.col);
      dc = std::min(dc, response.cols() - dc);
      if (dr <= kHalfWindow && dc <= kHalfWindow) continue;
      const double v = response(r, c);
      sum += v;
      sum_sq += v * v;
      ++n;
    }
  }
  if (n < 2) return 0.0;
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  const double sd = std::sqrt(var);
  if (sd == 0.0) return 0.0;
  return (response(peak.row, peak.col) - mean) / sd;
}

ResponseMap detect(const FilterModel& model, const FeatureMap& feat) {
  require_compatible(model, feat, "detect");
  const auto spectra = feature_spectra(feat);
  Spectrum acc(model.grid_size());
  for (int l = 0; l < model.depth(); ++l) {
    const auto& a = model.numerator[l];
    const auto& z = spectra[l];
    for (std::size_t i = 0; i < acc.count(); ++i) acc[i] += std::conj(a[i]) * z[i];
  }
  // A resized denominator can hold small negative or complex bins; only its
  // non-negative real part is used as the energy.
  for (std::size_t i = 0; i < acc.count(); ++i) {
    acc[i] /= std::max(0.0, model.denominator[i].real()) + model.lambda;
  }

  ResponseMap out;
  out.values = real_part(idft2_complex(acc));
  const auto& v = out.values.values();
  const auto it = std::max_element(v.begin(), v.end());
  const auto idx = static_cast<int>(it - v.begin());
  out.peak_pos = {idx / out.values.cols(), idx % out.values.cols()};
  out.peak_value = *it;
  out.psr = peak_to_sidelobe(out.values, out.peak_pos);
  return out;
}

namespace {

Spectrum resize_channel_spatial(const Spectrum& spec, GridSize size) {
  const Spectrum centered = fftshift(idft2_complex(spec));
  return dft2(ifftshift(resize_grid_spatial(centered, size.rows, size.cols)));
}

// Trigonometric interpolation of the spectral samples onto the finer (or
// coarser) frequency lattice of the new grid. The forward DFT of a spectrum
// is the index-reversed spatial signal, so this is the frequency-domain dual
// of zero-padding the filter around its origin.
Spectrum resize_channel_frequency(const Spectrum& spec, GridSize size) {
  return idft2_complex(resize_spectrum(dft2(spec), size.rows, size.cols));
}

}  // namespace

FilterModel resize_model(const FilterModel& model, GridSize new_size, ResizeMethod method) {
  if (new_size.rows < 1 || new_size.cols < 1) throw std::invalid_argument("resize_model: empty target grid");
  if (new_size == model.grid_size()) return model;
  FilterModel out;
  out.lambda = model.lambda;
  out.eta = model.eta;
  auto resize = [&](const Spectrum& s) {
    return method == ResizeMethod::Frequency ? resize_channel_frequency(s, new_size)
                                             : resize_channel_spatial(s, new_size);
  };
  out.numerator.reserve(model.numerator.size());
  for (const auto& a : model.numerator) out.numerator.push_back(resize(a));
  // Kept unprojected so that grow then shrink restores the model; detect()
  // clamps the energy instead.
  out.denominator = resize(model.denominator);
  return out;
}

// Snapshot layout (little-endian):
//   char[8]  "ADTRKFLT"
//   uint32   version (1)
//   int32    rows, cols, depth
//   float64  lambda, eta
//   float64  numerator re/im pairs, channel-major, row-major within a channel
//   float64  denominator re/im pairs
namespace {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

constexpr char kMagic[8] = {'A', 'D', 'T', 'R', 'K', 'F', 'L', 'T'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void write_pod(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_pod(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("load_model: truncated snapshot");
  return v;
}

void write_spectrum(std::ostream& out, const Spectrum& s) {
  out.write(reinterpret_cast<const char*>(s.data()),
            static_cast<std::streamsize>(s.count() * sizeof(Complex)));
}

Spectrum read_spectrum(std::istream& in, int rows, int cols) {
  Spectrum s(rows, cols);
  in.read(reinterpret_cast<char*>(s.data()), static_cast<std::streamsize>(s.count() * sizeof(Complex)));
  if (!in) throw std::runtime_error("load_model: truncated snapshot");
  return s;
}

}  // namespace

void save_model(std::ostream& out, const FilterModel& model) {
  out.write(kMagic, sizeof(kMagic));
  write_pod(out, kVersion);
  write_pod(out, static_cast<std::int32_t>(model.grid_size().rows));
  write_pod(out, static_cast<std::int32_t>(model.grid_size().cols));
  write_pod(out, static_cast<std::int32_t>(model.depth()));
  write_pod(out, model.lambda);
  write_pod(out, model.eta);
  for (const auto& a : model.numerator) write_spectrum(out, a);
  write_spectrum(out, model.denominator);
  if (!out) throw std::runtime_error("save_model: write failed");
}

FilterModel load_model(std::istream& in) {
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("load_model: not a filter snapshot");
  }
  const auto version = read_pod<std::uint32_t>(in);
  if (version != kVersion) throw std::runtime_error("load_model: unsupported version " + std::to_string(version));
  const auto rows = read_pod<std::int32_t>(in);
  const auto cols = read_pod<std::int32_t>(in);
  const auto depth = read_pod<std::int32_t>(in);
  if (rows < 1 || cols < 1 || depth < 1) throw std::runtime_error("load_model: bad extents");
  FilterModel model;
  model.lambda = read_pod<double>(in);
  model.eta = read_pod<double>(in);
  for (int l = 0; l < depth; ++l) model.numerator.push_back(read_spectrum(in, rows, cols));
  model.denominator = read_spectrum(in, rows, cols);
  return model;
}

void save_model(const std::string& path, const FilterModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_model: cannot open " + path);
  save_model(out, model);
}

FilterModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_model: cannot open " + path);
  return load_model(in);
}

}  // namespace adtrack
