#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bcnoise/measure.hpp"
#include "bcnoise/network.hpp"
#include "bcnoise/profile.hpp"
#include "bcnoise/rng.hpp"

namespace bcnoise {

struct OpinionState {
  std::vector<double> opinions;
  std::uint64_t step = 0;
};

/// How mutation and interaction share one event.
///   MutateOrInteract:  node A mutates with probability P(o_A); otherwise A
///                      interacts with a random neighbor.
///   MutateAndInteract: A interacts with a random neighbor, then an
///                      independently drawn node C mutates with probability P(o_C).
enum class Scheme { MutateOrInteract, MutateAndInteract };

std::string_view to_string(Scheme scheme);
/// `or` | `and`
Scheme parse_scheme(std::string_view text);

struct InitSpec {
  enum class Kind { UniformIID, Constant, TwoDelta };
  Kind kind = Kind::UniformIID;
  double a = 0.0;
  double b = 0.0;

  static InitSpec uniform() { return {}; }
  static InitSpec constant(double c) { return {Kind::Constant, c, c}; }
  static InitSpec two_delta(double a, double b) { return {Kind::TwoDelta, a, b}; }

  friend bool operator==(const InitSpec&, const InitSpec&) = default;
};

/// `uniform` | `const:<c>` | `twodelta:<a>,<b>`
InitSpec parse_init(std::string_view text);
std::string to_string(const InitSpec& init);

struct SimConfig {
  double tolerance = 0.1;  // d
  double mu = 0.5;
  std::uint64_t total_steps = 10'000'000;
  std::uint64_t window = 1000;
  Scheme scheme = Scheme::MutateOrInteract;
  InitSpec init;
  std::uint64_t seed = 1;
  std::size_t bins = 200;
};

/// ParamError naming the offending field.
void validate(const SimConfig& cfg);

struct RunStats {
  std::uint64_t steps = 0;
  std::uint64_t interactions = 0;   // pair formed (A had a neighbor)
  std::uint64_t consensus = 0;      // pair within tolerance
  std::uint64_t mutations = 0;
  std::uint64_t isolated_skips = 0; // A had no neighbor
  double wall_seconds = 0.0;

  RunStats& operator+=(const RunStats& o) {
    steps += o.steps;
    interactions += o.interactions;
    consensus += o.consensus;
    mutations += o.mutations;
    isolated_skips += o.isolated_skips;
    wall_seconds += o.wall_seconds;
    return *this;
  }
};

/// Initial opinions. Draws n values from rng for UniformIID and TwoDelta,
/// nothing for Constant. ParamError for values outside [0,1] or n == 0.
OpinionState init_opinions(std::size_t n, const InitSpec& init, Rng& rng);

/// Bounded-confidence compromise: if |a - b| < d both move mu * (a - b)
/// towards each other, otherwise nothing happens. With mu = 1/2 both end on
/// the same value.
inline std::pair<double, double> pair_update(double a, double b, double d, double mu) noexcept {
  const double diff = a - b;
  if (!(diff < d && -diff < d)) return {a, b};
  const double shift = mu * diff;
  const double new_a = a - shift;
  return {new_a, mu == 0.5 ? new_a : b + shift};
}

/// Replaces node's opinion with a fresh uniform draw.
void mutate(OpinionState& state, Node node, Rng& rng);

/// Advances the state by one event. Random draws are consumed in a fixed
/// order: node, gate, then the mutation value or the neighbor index (and for
/// MutateAndInteract: node, neighbor, mutating node, gate, mutation value).
void step(OpinionState& state, const Graph& g, const SimConfig& cfg,
          const MutationProfile& profile, Rng& rng, RunStats* stats = nullptr);

struct RunResult {
  OpinionState final_state;
  Histogram histogram;  // N * window samples
  RunStats stats;
};

/// Runs cfg.total_steps events from opinions drawn per cfg.init, seeding the
/// stream from cfg.seed. After each of the last cfg.window events the whole
/// opinion vector is tallied into the histogram. A pure function of its
/// arguments (apart from stats.wall_seconds).
RunResult run(const Graph& g, const SimConfig& cfg, const MutationProfile& profile);

}  // namespace bcnoise
