#include "bcnoise/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "bcnoise/dynamics.hpp"
#include "bcnoise/errors.hpp"
#include "bcnoise/io.hpp"
#include "bcnoise/measure.hpp"
#include "bcnoise/network.hpp"
#include "bcnoise/profile.hpp"
#include "bcnoise/sweep.hpp"
#include "bcnoise/version.hpp"

namespace fs = std::filesystem;

namespace bcnoise::cli {

namespace {

/// Shortest text that parses back to the same double.
std::string exact(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct ModelFlags {
  std::size_t n = 10'000;
  double degree = 10.0;
  double mu = 0.5;
  std::uint64_t steps = 50'000'000;
  std::uint64_t window = 1000;
  double p = 0.01;
  double alpha = 0.0;
  std::string profile = "uniform";
  std::string scheme = "or";
  std::string init = "uniform";
  std::uint64_t seed = 1;
  std::size_t bins = 200;
  std::string out = "out";
  std::string name;
};

void add_model_flags(CLI::App& app, ModelFlags& f) {
  app.add_option("--n", f.n, "number of agents")->capture_default_str();
  app.add_option("--degree", f.degree, "mean degree of the ER network")->capture_default_str();
  app.add_option("--mu", f.mu, "convergence parameter in (0, 0.5]")->capture_default_str();
  app.add_option("--steps", f.steps, "events per simulation")->capture_default_str();
  app.add_option("--window", f.window, "final events averaged into the histogram")
      ->capture_default_str();
  app.add_option("--p", f.p, "mean mutation probability")->capture_default_str();
  app.add_option("--alpha", f.alpha, "mutation profile slope")->capture_default_str();
  app.add_option("--profile", f.profile, "uniform|asym|sym")->capture_default_str();
  app.add_option("--scheme", f.scheme, "or|and")->capture_default_str();
  app.add_option("--init", f.init, "uniform|const:<c>|twodelta:<a>,<b>")->capture_default_str();
  app.add_option("--seed", f.seed, "master seed")->capture_default_str();
  app.add_option("--bins", f.bins, "histogram bins")->capture_default_str();
}

void add_output_flags(CLI::App& app, ModelFlags& f) {
  app.add_option("--out", f.out, "output root directory")->capture_default_str();
  app.add_option("--name", f.name, "output subdirectory (default: subcommand name)");
}

SimConfig sim_config(const ModelFlags& f) {
  SimConfig cfg;
  cfg.mu = f.mu;
  cfg.total_steps = f.steps;
  cfg.window = f.window;
  cfg.scheme = parse_scheme(f.scheme);
  cfg.init = parse_init(f.init);
  cfg.bins = f.bins;
  return cfg;
}

MutationProfile make_profile(const ModelFlags& f) {
  return MutationProfile(parse_profile_kind(f.profile), f.p, f.alpha);
}

io::KeyValues model_entries(const ModelFlags& f) {
  return {{"n", std::to_string(f.n)},          {"degree", exact(f.degree)},
          {"mu", exact(f.mu)},                 {"steps", std::to_string(f.steps)},
          {"window", std::to_string(f.window)}, {"p", exact(f.p)},
          {"alpha", exact(f.alpha)},           {"profile", f.profile},
          {"scheme", f.scheme},                {"init", f.init},
          {"seed", std::to_string(f.seed)},    {"bins", std::to_string(f.bins)}};
}

void append_stats(io::KeyValues& kv, const std::string& prefix, const RunStats& s) {
  kv.emplace_back(prefix + "steps", std::to_string(s.steps));
  kv.emplace_back(prefix + "interactions", std::to_string(s.interactions));
  kv.emplace_back(prefix + "consensus", std::to_string(s.consensus));
  kv.emplace_back(prefix + "mutations", std::to_string(s.mutations));
  kv.emplace_back(prefix + "isolated_skips", std::to_string(s.isolated_skips));
  kv.emplace_back(prefix + "wall_seconds", exact(s.wall_seconds));
}

void append_network(io::KeyValues& kv, const std::string& prefix, const DegreeStats& s,
                    std::size_t edges) {
  kv.emplace_back(prefix + "edges", std::to_string(edges));
  kv.emplace_back(prefix + "degree_mean", exact(s.mean));
  kv.emplace_back(prefix + "degree_min", std::to_string(s.min));
  kv.emplace_back(prefix + "degree_max", std::to_string(s.max));
  kv.emplace_back(prefix + "isolated", std::to_string(s.isolated));
}

fs::path output_dir(const ModelFlags& f, const std::string& fallback) {
  fs::path dir = fs::path(f.out) / (f.name.empty() ? fallback : f.name);
  fs::create_directories(dir);
  return dir;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void write_meta(const fs::path& path, const std::string& title, const io::KeyValues& kv) {
  auto out = open_out(path);
  out << "# bcnoise " << title << " metadata; re-run with --config " << path.filename().string()
      << "\n";
  io::write_key_values(out, kv);
}

io::KeyValues common_info() {
  return {{"info.version", kVersion},
          {"info.rng", "mt19937_64; uniform01 = (u64 >> 11) * 2^-53; index = Lemire bounded"},
          {"info.graph_model", "G(n,p) binomial, p_edge = degree/(n-1), isolated nodes kept"},
          {"info.step_unit", "one pair-selection event"},
          {"info.window_sampling", "full opinion vector tallied after every window event"},
          {"info.consensus_rule", "|a-b| < d (strict)"}};
}

int cmd_run(const ModelFlags& f, double d, const std::string& network_path, bool save_final,
            std::ostream& out) {
  SimConfig cfg = sim_config(f);
  cfg.tolerance = d;
  cfg.seed = derive_seed(f.seed, 0, 0, StreamTag::Dynamics);
  validate(cfg);
  const MutationProfile profile = make_profile(f);

  Graph g;
  std::uint64_t network_seed = 0;
  if (network_path.empty()) {
    network_seed = derive_seed(f.seed, 0, 0, StreamTag::Network);
    Rng rng(network_seed);
    g = generate_er(f.n, f.degree, rng);
  } else {
    std::ifstream in(network_path);
    if (!in) throw ParamError("--network: cannot open " + network_path);
    g = read_edge_list(in);
  }

  const RunResult result = run(g, cfg, profile);
  const fs::path dir = output_dir(f, "run");
  {
    auto csv = open_out(dir / "distribution.csv");
    io::write_distribution_csv(csv, result.histogram.density());
  }
  if (save_final) {
    auto fin = open_out(dir / "final_state.csv");
    fin << "opinion\n";
    for (double x : result.final_state.opinions) fin << io::format_float(x) << '\n';
  }

  io::KeyValues kv = model_entries(f);
  kv.emplace_back("d", exact(d));
  if (!network_path.empty()) kv.emplace_back("network", network_path);
  kv.emplace_back("save-final", save_final ? "true" : "false");
  kv.emplace_back("out", f.out);
  kv.emplace_back("name", f.name.empty() ? "run" : f.name);
  for (auto& e : common_info()) kv.push_back(e);
  if (network_path.empty()) kv.emplace_back("info.network_seed", std::to_string(network_seed));
  kv.emplace_back("info.dynamics_seed", std::to_string(cfg.seed));
  kv.emplace_back("info.mean_mutation_rate", exact(profile.mean_rate()));
  append_network(kv, "info.network.", degree_stats(g), g.edge_count());
  append_stats(kv, "info.events.", result.stats);
  write_meta(dir / "meta.txt", "run", kv);

  out << "wrote " << (dir / "distribution.csv").string() << " (" << result.stats.steps
      << " events, " << result.stats.mutations << " mutations, " << result.stats.wall_seconds
      << " s)\n";
  return kOk;
}

struct SweepFlags {
  double d_start = 0.1;
  double d_end = 0.75;
  double d_step = 0.005;
  std::size_t replicates = 10;
  std::size_t workers = 1;
  double min_peak_frac = 0.2;
  std::size_t min_peak_sep = 9;
  bool quiet = false;
};

int cmd_sweep(const ModelFlags& f, const SweepFlags& s, std::ostream& out, std::ostream& err) {
  SweepPlan plan;
  plan.d_start = s.d_start;
  plan.d_end = s.d_end;
  plan.d_step = s.d_step;
  plan.replicates = s.replicates;
  plan.base = sim_config(f);
  plan.n = f.n;
  plan.avg_degree = f.degree;
  plan.profile = make_profile(f);
  plan.master_seed = f.seed;
  validate(plan);
  if (s.workers == 0) throw ParamError("workers must be >= 1");
  const PeakOptions peak_options{s.min_peak_frac, s.min_peak_sep};
  if (!(peak_options.min_height_frac > 0.0 && peak_options.min_height_frac <= 1.0)) {
    throw ParamError("min-peak-frac must be in (0, 1]");
  }

  ProgressFn progress;
  if (!s.quiet) {
    progress = [&err](std::size_t done, std::size_t total) {
      err << "\rsweep: " << done << "/" << total << " tasks" << (done == total ? "\n" : "")
          << std::flush;
    };
  }
  const SweepResult result = execute(plan, s.workers, progress);

  const fs::path dir = output_dir(f, "sweep");
  {
    auto csv = open_out(dir / "bifurcation.csv");
    io::write_bifurcation_csv(csv, result.map);
  }
  std::vector<std::vector<Peak>> peaks;
  for (const auto& row : result.map.densities) peaks.push_back(detect_peaks(row, peak_options));
  {
    auto csv = open_out(dir / "peaks.csv");
    io::write_peak_table(csv, result.map.d_values, peaks);
  }

  io::KeyValues kv = model_entries(f);
  kv.emplace_back("d-start", exact(s.d_start));
  kv.emplace_back("d-end", exact(s.d_end));
  kv.emplace_back("d-step", exact(s.d_step));
  kv.emplace_back("replicates", std::to_string(s.replicates));
  kv.emplace_back("workers", std::to_string(s.workers));
  kv.emplace_back("min-peak-frac", exact(s.min_peak_frac));
  kv.emplace_back("min-peak-sep", std::to_string(s.min_peak_sep));
  kv.emplace_back("out", f.out);
  kv.emplace_back("name", f.name.empty() ? "sweep" : f.name);
  for (auto& e : common_info()) kv.push_back(e);
  kv.emplace_back("info.d_values", std::to_string(result.map.d_values.size()));
  kv.emplace_back("info.tasks", std::to_string(result.tasks.size()));
  kv.emplace_back("info.network_reuse", "one network per replicate, shared across all d");
  kv.emplace_back("info.initialization", "fresh initial opinions for every task");
  kv.emplace_back("info.seed_derivation", "splitmix64 absorb (master, tag, replicate, d_index)");
  kv.emplace_back("info.peak_smoothing", "centered moving average, width = min-peak-sep (odd)");
  for (std::size_t r = 0; r < result.networks.size(); ++r) {
    kv.emplace_back("info.replicate." + std::to_string(r) + ".network_seed",
                    std::to_string(derive_seed(plan.master_seed, r, 0, StreamTag::Network)));
    kv.emplace_back("info.replicate." + std::to_string(r) + ".degree_mean",
                    exact(result.networks[r].mean));
    kv.emplace_back("info.replicate." + std::to_string(r) + ".isolated",
                    std::to_string(result.networks[r].isolated));
  }
  RunStats total;
  for (const auto& st : result.task_stats) total += st;
  append_stats(kv, "info.events.", total);
  write_meta(dir / "meta.txt", "sweep", kv);

  out << "wrote " << (dir / "bifurcation.csv").string() << " (" << result.map.d_values.size()
      << " d values x " << plan.replicates << " replicates)\n";
  return kOk;
}

int cmd_gen_net(const ModelFlags& f, std::ostream& out) {
  const std::uint64_t seed = derive_seed(f.seed, 0, 0, StreamTag::Network);
  Rng rng(seed);
  const Graph g = generate_er(f.n, f.degree, rng);
  const fs::path dir = output_dir(f, "gen-net");
  {
    auto file = open_out(dir / "network.edges");
    const std::vector<std::string> comments = {
        "bcnoise " + std::string(kVersion) + " G(n,p) n=" + std::to_string(f.n) +
            " degree=" + exact(f.degree) + " seed=" + std::to_string(f.seed)};
    write_edge_list(g, file, comments);
  }
  const auto s = degree_stats(g);
  out << "wrote " << (dir / "network.edges").string() << ": " << g.edge_count()
      << " edges, mean degree " << s.mean << ", min " << s.min << ", max " << s.max << ", "
      << s.isolated << " isolated\n";
  return kOk;
}

int cmd_peaks(const std::string& input, const PeakOptions& options, const ModelFlags& f,
              bool write_file, std::ostream& out) {
  std::ifstream in(input);
  if (!in) throw ParseError("cannot open " + input, 0);
  std::string first;
  std::getline(in, first);
  in.clear();
  in.seekg(0);

  std::ostringstream table;
  if (io::split_csv(first).size() == 2 && first.find("density") != std::string::npos) {
    const auto dist = io::read_distribution_csv(in);
    io::write_peaks(table, detect_peaks(dist.density, options));
  } else {
    const auto map = io::read_bifurcation_csv(in);
    std::vector<std::vector<Peak>> peaks;
    for (const auto& row : map.densities) peaks.push_back(detect_peaks(row, options));
    io::write_peak_table(table, map.d_values, peaks);
  }
  out << table.str();
  if (write_file) {
    auto file = open_out(output_dir(f, "peaks") / "peaks.csv");
    file << table.str();
  }
  return kOk;
}

/// Expands `--config <file>` into `--key=value` tokens placed ahead of the
/// explicit arguments, so explicit flags win (options take the last value).
std::vector<std::string> expand_config(const std::vector<std::string>& args, CLI::App& app) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].starts_with("--config=")) path = args[i].substr(9);
  }
  if (path.empty() || args.empty()) return args;

  CLI::App* sub = nullptr;
  for (auto* s : app.get_subcommands({})) {
    if (s->get_name() == args.front()) sub = s;
  }
  if (sub == nullptr) return args;

  std::ifstream in(path);
  if (!in) throw ParamError("--config: cannot open " + path);
  io::KeyValues entries;
  try {
    entries = io::read_key_values(in);
  } catch (const ParseError& e) {
    throw ParamError("--config " + path + ": " + e.what());
  }

  std::set<std::string> own;
  std::set<std::string> any;
  for (auto* s : app.get_subcommands({})) {
    for (const auto* opt : s->get_options()) {
      for (const auto& name : opt->get_lnames()) {
        any.insert(name);
        if (s == sub) own.insert(name);
      }
    }
  }

  std::vector<std::string> expanded{args.front()};
  for (const auto& [key, value] : entries) {
    if (key == "config" || key.starts_with("info.")) continue;
    if (own.contains(key)) {
      expanded.push_back("--" + key + "=" + value);
    } else if (!any.contains(key)) {
      throw ParamError("--config " + path + ": unknown key '" + key + "'");
    }
  }
  expanded.insert(expanded.end(), args.begin() + 1, args.end());
  return expanded;
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded-confidence opinion dynamics with opinion-dependent mutation", "bcnoise"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  ModelFlags f;
  double d = 0.1;
  std::string network_path;
  bool save_final = false;
  std::string config_path;

  auto* run_cmd = app.add_subcommand("run", "simulate one tolerance on one network");
  add_model_flags(*run_cmd, f);
  run_cmd->add_option("--d", d, "confidence bound in (0, 1]")->capture_default_str();
  run_cmd->add_option("--network", network_path, "edge-list file to use instead of generating");
  run_cmd->add_flag("--save-final", save_final, "also write the final opinion vector");
  add_output_flags(*run_cmd, f);
  run_cmd->add_option("--config", config_path, "key = value file; explicit flags override");

  SweepFlags s;
  auto* sweep_cmd = app.add_subcommand("sweep", "tolerance sweep over replicate networks");
  add_model_flags(*sweep_cmd, f);
  sweep_cmd->add_option("--d-start", s.d_start)->capture_default_str();
  sweep_cmd->add_option("--d-end", s.d_end)->capture_default_str();
  sweep_cmd->add_option("--d-step", s.d_step)->capture_default_str();
  sweep_cmd->add_option("--replicates", s.replicates, "networks per profile")->capture_default_str();
  sweep_cmd->add_option("--workers", s.workers, "worker threads")->capture_default_str();
  sweep_cmd->add_option("--min-peak-frac", s.min_peak_frac)->capture_default_str();
  sweep_cmd->add_option("--min-peak-sep", s.min_peak_sep, "bins")->capture_default_str();
  sweep_cmd->add_flag("--quiet", s.quiet, "no progress line");
  add_output_flags(*sweep_cmd, f);
  sweep_cmd->add_option("--config", config_path, "key = value file; explicit flags override");

  auto* gen_cmd = app.add_subcommand("gen-net", "write an ER edge list");
  gen_cmd->add_option("--n", f.n)->capture_default_str();
  gen_cmd->add_option("--degree", f.degree)->capture_default_str();
  gen_cmd->add_option("--seed", f.seed)->capture_default_str();
  add_output_flags(*gen_cmd, f);
  gen_cmd->add_option("--config", config_path, "key = value file; explicit flags override");

  std::string peaks_input;
  PeakOptions peak_options;
  auto* peaks_cmd = app.add_subcommand("peaks", "peak table for a distribution or bifurcation CSV");
  peaks_cmd->add_option("input", peaks_input, "CSV file")->required();
  peaks_cmd->add_option("--min-peak-frac", peak_options.min_height_frac)->capture_default_str();
  peaks_cmd->add_option("--min-peak-sep", peak_options.min_separation, "bins")
      ->capture_default_str();
  auto* peaks_out = peaks_cmd->add_option("--out", f.out, "also write <out>/<name>/peaks.csv");
  peaks_cmd->add_option("--name", f.name);

  try {
    const auto expanded = expand_config(args, app);
    std::vector<const char*> argv{"bcnoise"};
    for (const auto& a : expanded) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParamError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(f, d, network_path, save_final, out);
    if (sweep_cmd->parsed()) return cmd_sweep(f, s, out, err);
    if (gen_cmd->parsed()) return cmd_gen_net(f, out);
    if (peaks_cmd->parsed()) {
      return cmd_peaks(peaks_input, peak_options, f, peaks_out->count() > 0, out);
    }
  } catch (const ParamError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace bcnoise::cli
