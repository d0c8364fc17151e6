#include "bcnoise/profile.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "bcnoise/errors.hpp"

namespace bcnoise {

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Uniform:
      return "uniform";
    case ProfileKind::AsymmetricLinear:
      return "asym";
    case ProfileKind::SymmetricTent:
      return "sym";
  }
  return "uniform";
}

ProfileKind parse_profile_kind(std::string_view text) {
  if (text == "uniform") return ProfileKind::Uniform;
  if (text == "asym") return ProfileKind::AsymmetricLinear;
  if (text == "sym") return ProfileKind::SymmetricTent;
  throw ParamError("profile must be one of uniform|asym|sym, got '" + std::string(text) + "'");
}

namespace {

double raw_value(ProfileKind kind, double p, double alpha, double x) {
  switch (kind) {
    case ProfileKind::Uniform:
      return p;
    case ProfileKind::AsymmetricLinear:
      return alpha * (x - 0.5) + p;
    case ProfileKind::SymmetricTent:
      return x <= 0.5 ? alpha * (x - 0.25) + p : -alpha * (x - 0.75) + p;
  }
  return p;
}

}  // namespace

void validate(ProfileKind kind, double base_rate, double slope) {
  if (!std::isfinite(base_rate) || !std::isfinite(slope)) {
    throw ParamError("profile parameters must be finite");
  }
  if (kind == ProfileKind::Uniform && slope != 0.0) {
    throw ParamError("uniform profile requires alpha = 0");
  }
  for (double x : std::array{0.0, 0.5, 1.0}) {
    const double value = raw_value(kind, base_rate, slope, x);
    if (value < 0.0 || value > 1.0) {
      std::ostringstream msg;
      msg << "mutation probability out of [0,1]: P(" << x << ") = " << value;
      throw RangeError(msg.str(), x, value);
    }
  }
}

MutationProfile::MutationProfile(ProfileKind kind, double base_rate, double slope)
    : kind_(kind), base_rate_(base_rate), slope_(slope) {
  validate(kind, base_rate, slope);
}

double MutationProfile::evaluate(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("opinion must lie in [0,1]");
  }
  return (*this)(x);
}

double MutationProfile::mean_rate() const noexcept {
  // P is linear on each segment, so the trapezoid rule is exact there.
  const auto segment = [this](double a, double b) {
    return (b - a) * 0.5 * (raw_value(kind_, base_rate_, slope_, a) +
                            raw_value(kind_, base_rate_, slope_, b));
  };
  if (kind_ == ProfileKind::SymmetricTent) {
    // right branch evaluated at 0.5 equals the left one (continuity)
    return segment(0.0, 0.5) + segment(0.5, 1.0);
  }
  return segment(0.0, 1.0);
}

}  // namespace bcnoise
