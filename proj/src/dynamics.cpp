#include "bcnoise/dynamics.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <system_error>

#include "bcnoise/errors.hpp"

namespace bcnoise {

std::string_view to_string(Scheme scheme) {
  return scheme == Scheme::MutateOrInteract ? "or" : "and";
}

Scheme parse_scheme(std::string_view text) {
  if (text == "or") return Scheme::MutateOrInteract;
  if (text == "and") return Scheme::MutateAndInteract;
  throw ParamError("scheme must be 'or' or 'and', got '" + std::string(text) + "'");
}

namespace {

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParamError("init: malformed " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void check_unit(double v, std::string_view what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ParamError("init: " + std::string(what) + " must lie in [0,1]");
  }
}

// Invoked with (node, old opinion, new opinion) on every change.
struct NoObserver {
  void operator()(Node, double, double) const noexcept {}
};

template <typename Observer>
inline void step_impl(OpinionState& state, const Graph& g, double d, double mu, Scheme scheme,
                      const MutationProfile& profile, Rng& rng, RunStats& stats,
                      Observer&& observe) {
  double* o = state.opinions.data();
  const std::uint64_t n = state.opinions.size();

  const auto interact = [&](Node a) {
    const std::size_t deg = g.degree_unchecked(a);
    if (deg == 0) {
      ++stats.isolated_skips;
      return;
    }
    const Node b = g.neighbors_begin(a)[rng.below(deg)];
    ++stats.interactions;
    if (!(std::abs(o[a] - o[b]) < d)) return;
    ++stats.consensus;
    const auto [new_a, new_b] = pair_update(o[a], o[b], d, mu);
    observe(a, o[a], new_a);
    observe(b, o[b], new_b);
    o[a] = new_a;
    o[b] = new_b;
  };
  const auto mutate_to = [&](Node c) {
    const double fresh = rng.uniform01();
    ++stats.mutations;
    observe(c, o[c], fresh);
    o[c] = fresh;
  };

  if (scheme == Scheme::MutateOrInteract) {
    const auto a = static_cast<Node>(rng.below(n));
    const double gate = rng.uniform01();
    if (gate < profile(o[a])) {
      mutate_to(a);
    } else {
      interact(a);
    }
  } else {
    interact(static_cast<Node>(rng.below(n)));
    const auto c = static_cast<Node>(rng.below(n));
    const double gate = rng.uniform01();
    if (gate < profile(o[c])) mutate_to(c);
  }
  ++state.step;
  ++stats.steps;
}

}  // namespace

InitSpec parse_init(std::string_view text) {
  if (text == "uniform") return InitSpec::uniform();
  if (text.starts_with("const:")) {
    const double c = parse_double(text.substr(6), "constant");
    check_unit(c, "constant");
    return InitSpec::constant(c);
  }
  if (text.starts_with("twodelta:")) {
    const auto body = text.substr(9);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) throw ParamError("init: expected twodelta:<a>,<b>");
    const double a = parse_double(body.substr(0, comma), "a");
    const double b = parse_double(body.substr(comma + 1), "b");
    check_unit(a, "a");
    check_unit(b, "b");
    return InitSpec::two_delta(a, b);
  }
  throw ParamError("init must be uniform, const:<c> or twodelta:<a>,<b>; got '" +
                   std::string(text) + "'");
}

std::string to_string(const InitSpec& init) {
  switch (init.kind) {
    case InitSpec::Kind::UniformIID:
      return "uniform";
    case InitSpec::Kind::Constant:
      return "const:" + format_double(init.a);
    case InitSpec::Kind::TwoDelta:
      return "twodelta:" + format_double(init.a) + "," + format_double(init.b);
  }
  return "uniform";
}

void validate(const SimConfig& cfg) {
  if (!(cfg.tolerance > 0.0 && cfg.tolerance <= 1.0)) throw ParamError("d must be in (0, 1]");
  if (!(cfg.mu > 0.0 && cfg.mu <= 0.5)) throw ParamError("mu must be in (0, 0.5]");
  if (cfg.total_steps == 0) throw ParamError("steps must be >= 1");
  if (cfg.window == 0 || cfg.window > cfg.total_steps) {
    throw ParamError("window must be in [1, steps]");
  }
  if (cfg.bins == 0) throw ParamError("bins must be >= 1");
  if (cfg.init.kind != InitSpec::Kind::UniformIID) {
    check_unit(cfg.init.a, "a");
    check_unit(cfg.init.b, "b");
  }
}

OpinionState init_opinions(std::size_t n, const InitSpec& init, Rng& rng) {
  if (n == 0) throw ParamError("n must be >= 1");
  OpinionState state;
  state.opinions.resize(n);
  switch (init.kind) {
    case InitSpec::Kind::UniformIID:
      for (auto& x : state.opinions) x = rng.uniform01();
      break;
    case InitSpec::Kind::Constant:
      check_unit(init.a, "constant");
      state.opinions.assign(n, init.a);
      break;
    case InitSpec::Kind::TwoDelta:
      check_unit(init.a, "a");
      check_unit(init.b, "b");
      for (auto& x : state.opinions) x = rng.uniform01() < 0.5 ? init.a : init.b;
      break;
  }
  return state;
}

void mutate(OpinionState& state, Node node, Rng& rng) {
  if (node >= state.opinions.size()) throw IndexError("node out of range");
  state.opinions[node] = rng.uniform01();
}

void step(OpinionState& state, const Graph& g, const SimConfig& cfg,
          const MutationProfile& profile, Rng& rng, RunStats* stats) {
  if (state.opinions.size() != g.node_count()) {
    throw ParamError("opinion vector length does not match graph size");
  }
  RunStats local;
  step_impl(state, g, cfg.tolerance, cfg.mu, cfg.scheme, profile, rng, stats ? *stats : local,
            NoObserver{});
}

RunResult run(const Graph& g, const SimConfig& cfg, const MutationProfile& profile) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();

  Rng rng(cfg.seed);
  RunResult result{init_opinions(g.node_count(), cfg.init, rng), Histogram(cfg.bins), {}};
  OpinionState& state = result.final_state;
  RunStats& stats = result.stats;

  const std::uint64_t burn_in = cfg.total_steps - cfg.window;
  for (std::uint64_t t = 0; t < burn_in; ++t) {
    step_impl(state, g, cfg.tolerance, cfg.mu, cfg.scheme, profile, rng, stats, NoObserver{});
  }

  // Window: keep per-bin occupancy current and add it after every event, which
  // tallies exactly the same counts as re-binning the whole vector each time.
  Histogram& hist = result.histogram;
  std::vector<std::uint64_t> occupancy(cfg.bins, 0);
  for (double x : state.opinions) ++occupancy[hist.bin_of(x)];
  const auto track = [&](Node, double before, double after) {
    --occupancy[hist.bin_of(before)];
    ++occupancy[hist.bin_of(after)];
  };
  for (std::uint64_t t = 0; t < cfg.window; ++t) {
    step_impl(state, g, cfg.tolerance, cfg.mu, cfg.scheme, profile, rng, stats, track);
    hist.add_counts(occupancy);
  }

  stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace bcnoise
