#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bcnoise {

/// Fixed-width histogram over [0,1] with exact integer tallies. Densities are
/// derived on demand and never stored back.
class Histogram {
 public:
  explicit Histogram(std::size_t bins = 200);

  std::size_t bins() const noexcept { return counts_.size(); }
  std::uint64_t samples() const noexcept { return samples_; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }

  /// Bin index of an opinion; 1.0 lands in the last bin.
  std::size_t bin_of(double x) const noexcept {
    const auto i = static_cast<std::size_t>(x * static_cast<double>(counts_.size()));
    return i < counts_.size() ? i : counts_.size() - 1;
  }

  void accumulate(std::span<const double> opinions);

  /// Adds `occupancy[i]` to bin i, for callers that track per-bin occupancy
  /// incrementally. Sizes must match (ShapeError).
  void add_counts(std::span<const std::uint64_t> occupancy);

  /// In-place merge; ShapeError on bin mismatch.
  Histogram& operator+=(const Histogram& other);

  /// density_i = counts_i * B / samples, so that sum(density) / B == 1.
  /// All zeros when empty.
  std::vector<double> density() const;

  friend bool operator==(const Histogram&, const Histogram&) = default;

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t samples_ = 0;
};

Histogram merge(const Histogram& a, const Histogram& b);

/// Opinion at the center of each of `bins` equal-width bins.
std::vector<double> bin_centers(std::size_t bins);

struct Peak {
  std::size_t bin = 0;
  double location = 0.0;  // bin center
  double height = 0.0;    // smoothed density at the peak
};

struct PeakOptions {
  double min_height_frac = 0.2;
  std::size_t min_separation = 9;  // bins
};

/// Local maxima of a density after a centered moving average of width
/// `min_separation` (forced odd, truncated at the edges). Flat-topped maxima
/// count once, at the middle of the plateau. Maxima below
/// `min_height_frac * max` are dropped; of two maxima closer than
/// `min_separation` bins the higher survives (lower index on ties).
/// Result is sorted by location. ParamError if min_height_frac is outside (0,1].
std::vector<Peak> detect_peaks(std::span<const double> density, const PeakOptions& options = {});

/// Centered moving average used by detect_peaks.
std::vector<double> smooth(std::span<const double> density, std::size_t width);

/// (1/B) * sum |f_i - f_{B-1-i}|: L1 distance to the mirror image about 0.5.
double symmetry_l1(std::span<const double> density);

/// (1/B) * sum |f_i - g_i|. ShapeError on size mismatch.
double l1_distance(std::span<const double> a, std::span<const double> b);

struct MassSplit {
  double below = 0.0;  // bins entirely below 0.5
  double above = 0.0;  // bins entirely above 0.5
};

/// Probability mass on either side of opinion 0.5. With an odd bin count the
/// middle bin straddles 0.5 and is counted on neither side.
MassSplit mass_split(std::span<const double> density);

}  // namespace bcnoise
