#include "bcnoise/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bcnoise/errors.hpp"

namespace bcnoise {

Histogram::Histogram(std::size_t bins) : counts_(bins, 0) {
  if (bins == 0) throw ParamError("histogram needs at least one bin");
}

void Histogram::accumulate(std::span<const double> opinions) {
  for (double x : opinions) ++counts_[bin_of(x)];
  samples_ += opinions.size();
}

void Histogram::add_counts(std::span<const std::uint64_t> occupancy) {
  if (occupancy.size() != counts_.size()) throw ShapeError("occupancy size != bin count");
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    counts_[i] += occupancy[i];
    total += occupancy[i];
  }
  samples_ += total;
}

Histogram& Histogram::operator+=(const Histogram& other) {
  if (other.bins() != bins()) {
    throw ShapeError("cannot merge histograms with " + std::to_string(bins()) + " and " +
                     std::to_string(other.bins()) + " bins");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  samples_ += other.samples_;
  return *this;
}

std::vector<double> Histogram::density() const {
  std::vector<double> out(counts_.size(), 0.0);
  if (samples_ == 0) return out;
  const double scale = static_cast<double>(counts_.size()) / static_cast<double>(samples_);
  for (std::size_t i = 0; i < counts_.size(); ++i) out[i] = static_cast<double>(counts_[i]) * scale;
  return out;
}

Histogram merge(const Histogram& a, const Histogram& b) {
  Histogram out = a;
  out += b;
  return out;
}

std::vector<double> bin_centers(std::size_t bins) {
  std::vector<double> out(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    out[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(bins);
  }
  return out;
}

std::vector<double> smooth(std::span<const double> density, std::size_t width) {
  const std::size_t n = density.size();
  if (width % 2 == 0) ++width;
  const std::size_t half = width / 2;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n - 1, i + half);
    double sum = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) sum += density[j];
    out[i] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

std::vector<Peak> detect_peaks(std::span<const double> density, const PeakOptions& options) {
  if (!(options.min_height_frac > 0.0 && options.min_height_frac <= 1.0)) {
    throw ParamError("min-peak-frac must be in (0, 1]");
  }
  const std::size_t n = density.size();
  if (n == 0) return {};
  const auto s = smooth(density, std::max<std::size_t>(options.min_separation, 1));
  const double top = *std::max_element(s.begin(), s.end());
  if (!(top > 0.0)) return {};
  const double floor_height = options.min_height_frac * top;

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && s[j + 1] == s[i]) ++j;
    const bool rises = i == 0 || s[i - 1] < s[i];
    const bool falls = j == n - 1 || s[j + 1] < s[i];
    const bool whole_range = i == 0 && j == n - 1;
    if (rises && falls && !whole_range && s[i] >= floor_height) candidates.push_back((i + j) / 2);
    i = j + 1;
  }

  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });
  std::vector<std::size_t> kept;
  for (std::size_t c : candidates) {
    const bool clear = std::all_of(kept.begin(), kept.end(), [&](std::size_t k) {
      const std::size_t gap = c > k ? c - k : k - c;
      return gap >= options.min_separation;
    });
    if (clear) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end());

  std::vector<Peak> peaks;
  peaks.reserve(kept.size());
  for (std::size_t k : kept) {
    peaks.push_back({k, (static_cast<double>(k) + 0.5) / static_cast<double>(n), s[k]});
  }
  return peaks;
}

double symmetry_l1(std::span<const double> density) {
  const std::size_t n = density.size();
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::abs(density[i] - density[n - 1 - i]);
  return sum / static_cast<double>(n);
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ShapeError("densities have different bin counts");
  if (a.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum / static_cast<double>(a.size());
}

MassSplit mass_split(std::span<const double> density) {
  const std::size_t n = density.size();
  MassSplit m;
  const double w = n ? 1.0 / static_cast<double>(n) : 0.0;
  for (std::size_t i = 0; i < n / 2; ++i) {
    m.below += density[i] * w;
    m.above += density[n - 1 - i] * w;
  }
  return m;
}

}  // namespace bcnoise
