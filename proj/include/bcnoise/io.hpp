#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bcnoise/measure.hpp"
#include "bcnoise/sweep.hpp"

namespace bcnoise::io {

/// 9 significant digits, `%.9g`.
std::string format_float(double v);

/// `bin_center,density` then one row per bin.
void write_distribution_csv(std::ostream& out, std::span<const double> density);

struct Distribution {
  std::vector<double> bin_centers;
  std::vector<double> density;
};

/// ParseError with the line number on malformed input.
Distribution read_distribution_csv(std::istream& in);

/// `bin_center,d=<v1>,d=<v2>,...` (d to 3 decimals) then one row per bin.
void write_bifurcation_csv(std::ostream& out, const BifurcationMap& map);
BifurcationMap read_bifurcation_csv(std::istream& in);

/// `d,n_peaks,locations`, locations separated by ';'.
void write_peak_table(std::ostream& out, std::span<const double> d_values,
                      std::span<const std::vector<Peak>> peaks);

/// `location,height` rows for a single density.
void write_peaks(std::ostream& out, std::span<const Peak> peaks);

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Flat `key = value` text; `#` starts a comment line. ParseError on lines
/// without '=' or with an empty key.
KeyValues read_key_values(std::istream& in);
void write_key_values(std::ostream& out, const KeyValues& entries);

/// Splits a CSV line on commas (no quoting).
std::vector<std::string> split_csv(const std::string& line);

}  // namespace bcnoise::io
