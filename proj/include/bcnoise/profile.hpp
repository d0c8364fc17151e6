#pragma once

#include <string>
#include <string_view>

namespace bcnoise {

enum class ProfileKind { Uniform, AsymmetricLinear, SymmetricTent };

std::string_view to_string(ProfileKind kind);
/// Accepts the config spellings `uniform`, `asym`, `sym`.
ProfileKind parse_profile_kind(std::string_view text);

/// Opinion-dependent mutation probability P(x) on [0,1].
///
///   Uniform           P(x) = p
///   AsymmetricLinear  P(x) = alpha (x - 0.5) + p
///   SymmetricTent     P(x) = alpha (x - 0.25) + p    for x <= 0.5
///                     P(x) = -alpha (x - 0.75) + p   for x >  0.5
///
/// All three families average to p over [0,1]. Instances are validated on
/// construction and immutable afterwards, so one profile can be shared by any
/// number of concurrent simulations.
class MutationProfile {
 public:
  /// Throws RangeError if P leaves [0,1], ParamError for a Uniform profile
  /// with non-zero slope.
  MutationProfile(ProfileKind kind, double base_rate, double slope = 0.0);

  static MutationProfile uniform(double p) { return {ProfileKind::Uniform, p, 0.0}; }
  static MutationProfile asymmetric(double p, double alpha) {
    return {ProfileKind::AsymmetricLinear, p, alpha};
  }
  static MutationProfile symmetric(double p, double alpha) {
    return {ProfileKind::SymmetricTent, p, alpha};
  }

  ProfileKind kind() const noexcept { return kind_; }
  double base_rate() const noexcept { return base_rate_; }
  double slope() const noexcept { return slope_; }

  /// P(x); throws DomainError for x outside [0,1].
  double evaluate(double x) const;

  /// P(x) without the domain check, for the event loop.
  double operator()(double x) const noexcept {
    switch (kind_) {
      case ProfileKind::Uniform:
        return base_rate_;
      case ProfileKind::AsymmetricLinear:
        return slope_ * (x - 0.5) + base_rate_;
      case ProfileKind::SymmetricTent:
        return x <= 0.5 ? slope_ * (x - 0.25) + base_rate_ : -slope_ * (x - 0.75) + base_rate_;
    }
    return base_rate_;
  }

  /// Exact mean of P over [0,1], integrated piecewise.
  double mean_rate() const noexcept;

  friend bool operator==(const MutationProfile&, const MutationProfile&) = default;

 private:
  ProfileKind kind_;
  double base_rate_;
  double slope_;
};

/// Checks that P stays in [0,1]. Piecewise linear, so the extremes sit at 0, 1
/// and (for the tent) the 0.5 breakpoint.
void validate(ProfileKind kind, double base_rate, double slope);

}  // namespace bcnoise
