#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bcnoise {

/// Invalid construction or call parameters (node counts, tolerances, grids).
class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mutation profile that leaves [0,1] somewhere on the opinion axis.
class RangeError : public std::range_error {
 public:
  RangeError(const std::string& what, double x, double value)
      : std::range_error(what), x_(x), value_(value) {}

  double x() const noexcept { return x_; }
  double value() const noexcept { return value_; }

 private:
  double x_;
  double value_;
};

/// Opinion argument outside [0,1].
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Histograms or densities with different bin counts.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input. `line()` is 1-based; 0 means "no particular line".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace bcnoise
