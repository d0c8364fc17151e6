#include "bcnoise/io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

#include "bcnoise/errors.hpp"

namespace bcnoise::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, std::size_t line_no) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("not a number: '" + std::string(s) + "'", line_no);
  }
  return v;
}

bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) return true;
  }
  return false;
}

}  // namespace

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.emplace_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

void write_distribution_csv(std::ostream& out, std::span<const double> density) {
  const auto centers = bin_centers(density.size());
  out << "bin_center,density\n";
  for (std::size_t i = 0; i < density.size(); ++i) {
    out << format_float(centers[i]) << ',' << format_float(density[i]) << '\n';
  }
}

Distribution read_distribution_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw ParseError("empty distribution file", 0);
  const auto header = split_csv(line);
  if (header.size() != 2 || header[0] != "bin_center" || header[1] != "density") {
    throw ParseError("expected header 'bin_center,density'", line_no);
  }
  Distribution dist;
  while (next_line(in, line, line_no)) {
    const auto cells = split_csv(line);
    if (cells.size() != 2) throw ParseError("expected 2 columns", line_no);
    dist.bin_centers.push_back(parse_number(cells[0], line_no));
    dist.density.push_back(parse_number(cells[1], line_no));
  }
  return dist;
}

void write_bifurcation_csv(std::ostream& out, const BifurcationMap& map) {
  const std::size_t bins = map.densities.empty() ? 0 : map.densities.front().size();
  out << "bin_center";
  for (double d : map.d_values) {
    char buf[32];
    std::snprintf(buf, sizeof buf, ",d=%.3f", d);
    out << buf;
  }
  out << '\n';
  const auto centers = bin_centers(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    out << format_float(centers[b]);
    for (const auto& row : map.densities) out << ',' << format_float(row[b]);
    out << '\n';
  }
}

BifurcationMap read_bifurcation_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no)) throw ParseError("empty bifurcation file", 0);
  const auto header = split_csv(line);
  if (header.size() < 2 || header[0] != "bin_center") {
    throw ParseError("expected header 'bin_center,d=...'", line_no);
  }
  BifurcationMap map;
  for (std::size_t j = 1; j < header.size(); ++j) {
    if (!header[j].starts_with("d=")) throw ParseError("column header must be d=<value>", line_no);
    map.d_values.push_back(parse_number(std::string_view(header[j]).substr(2), line_no));
  }
  map.densities.resize(map.d_values.size());
  while (next_line(in, line, line_no)) {
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " columns", line_no);
    }
    parse_number(cells[0], line_no);
    for (std::size_t j = 1; j < cells.size(); ++j) {
      map.densities[j - 1].push_back(parse_number(cells[j], line_no));
    }
  }
  return map;
}

void write_peak_table(std::ostream& out, std::span<const double> d_values,
                      std::span<const std::vector<Peak>> peaks) {
  out << "d,n_peaks,locations\n";
  for (std::size_t i = 0; i < d_values.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", d_values[i]);
    out << buf << ',' << peaks[i].size() << ',';
    for (std::size_t k = 0; k < peaks[i].size(); ++k) {
      if (k) out << ';';
      out << format_float(peaks[i][k].location);
    }
    out << '\n';
  }
}

void write_peaks(std::ostream& out, std::span<const Peak> peaks) {
  out << "location,height\n";
  for (const auto& p : peaks) out << format_float(p.location) << ',' << format_float(p.height) << '\n';
}

KeyValues read_key_values(std::istream& in) {
  KeyValues out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", line_no);
    out.emplace_back(std::string(key), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

void write_key_values(std::ostream& out, const KeyValues& entries) {
  for (const auto& [k, v] : entries) out << k << " = " << v << '\n';
}

}  // namespace bcnoise::io
