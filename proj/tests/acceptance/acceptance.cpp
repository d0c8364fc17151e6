// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bcnoise/cli.hpp"
#include "bcnoise/dynamics.hpp"
#include "bcnoise/measure.hpp"
#include "bcnoise/network.hpp"
#include "bcnoise/profile.hpp"
#include "bcnoise/sweep.hpp"
#include "support/stats.hpp"

namespace fs = std::filesystem;
using namespace bcnoise;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Desk-scale settings shared by the steady-state criteria.
constexpr std::size_t kDeskN = 2000;
constexpr double kDeskDegree = 10.0;
constexpr std::uint64_t kDeskSteps = 10'000'000;
constexpr std::uint64_t kDeskWindow = 1000;
constexpr std::size_t kDeskReplicates = 5;
constexpr std::uint64_t kMasterSeed = 20160101;

// Per-replicate window histograms for one profile and tolerance. Replicate r
// uses the same network for every tolerance.
std::vector<Histogram> desk_histograms(const MutationProfile& profile, double d) {
  SweepPlan plan;
  plan.d_start = plan.d_end = d;
  plan.d_step = 0.005;
  plan.replicates = kDeskReplicates;
  plan.n = kDeskN;
  plan.avg_degree = kDeskDegree;
  plan.base.total_steps = kDeskSteps;
  plan.base.window = kDeskWindow;
  plan.profile = profile;
  plan.master_seed = kMasterSeed;
  std::vector<Histogram> out;
  for (const auto& task : plan_tasks(plan)) {
    out.push_back(run_task(plan, replicate_network(plan, task.replicate), task).histogram);
  }
  return out;
}

std::vector<double> pooled_density(const std::vector<Histogram>& reps) {
  Histogram pooled(reps.front().bins());
  for (const auto& h : reps) pooled += h;
  return pooled.density();
}

Verdict conservation_and_contraction() {
  const auto t0 = Clock::now();
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> mu_dist(1e-9, 0.5);
  double worst_sum = 0.0;
  double worst_gap = 0.0;
  long half_mu_nonzero_gaps = 0;
  for (int i = 0; i < 1'000'000; ++i) {
    const double a = unit(gen);
    const double b = unit(gen);
    const double d = unit(gen);
    const double mu = i % 2 ? 0.5 : mu_dist(gen);
    const auto [na, nb] = pair_update(a, b, d, mu);
    const bool within = std::abs(a - b) < d;
    const double expected_gap = within ? std::abs(1 - 2 * mu) * std::abs(a - b) : std::abs(a - b);
    worst_sum = std::max(worst_sum, std::abs((na + nb) - (a + b)));
    worst_gap = std::max(worst_gap, std::abs(std::abs(na - nb) - expected_gap));
    if (within && mu == 0.5 && na != nb) ++half_mu_nonzero_gaps;
  }
  const double t = seconds_since(t0);
  return {worst_sum <= 1e-12 && worst_gap <= 1e-12 && half_mu_nonzero_gaps == 0 && t < 1.0,
          "max |sum err| " + fmt("%.2e", worst_sum) + ", max |gap err| " + fmt("%.2e", worst_gap) +
              ", mu=1/2 nonzero gaps " + std::to_string(half_mu_nonzero_gaps) + ", " +
              fmt("%.3f s", t)};
}

Verdict mean_preservation() {
  const auto t0 = Clock::now();
  std::vector<MutationProfile> profiles;
  for (double a : {-0.02, -0.01, 0.01, 0.02}) profiles.push_back(MutationProfile::asymmetric(0.01, a));
  for (double a : {-0.04, -0.02, 0.02, 0.04}) profiles.push_back(MutationProfile::symmetric(0.01, a));
  double worst_analytic = 0.0;
  double worst_quad = 0.0;
  for (const auto& p : profiles) {
    worst_analytic = std::max(worst_analytic, std::abs(p.mean_rate() - 0.01));
    const double quad = testing::midpoint_mean([&](double x) { return p.evaluate(x); }, 1'000'000);
    worst_quad = std::max(worst_quad, std::abs(quad - p.mean_rate()));
  }
  const double t = seconds_since(t0);
  return {worst_analytic <= 1e-15 && worst_quad <= 1e-9 && t < 1.0,
          "8 profiles, max |mean-0.01| " + fmt("%.2e", worst_analytic) + ", max |quad-mean| " +
              fmt("%.2e", worst_quad) + ", " + fmt("%.3f s", t)};
}

Verdict pure_deffuant_consensus() {
  const auto t0 = Clock::now();
  Rng rng(derive_seed(kMasterSeed, 0, 0, StreamTag::Network));
  const Graph g = generate_er(kDeskN, kDeskDegree, rng);
  SimConfig cfg;
  cfg.tolerance = 1.0;
  cfg.mu = 0.5;
  cfg.total_steps = kDeskSteps;
  cfg.window = 1;
  cfg.seed = derive_seed(kMasterSeed, 0, 0, StreamTag::Dynamics);
  const auto result = run(g, cfg, MutationProfile::uniform(0.0));
  const auto giant = giant_component(g);
  double lo = 1.0;
  double hi = 0.0;
  for (Node u : giant) {
    lo = std::min(lo, result.final_state.opinions[u]);
    hi = std::max(hi, result.final_state.opinions[u]);
  }
  const double t = seconds_since(t0);
  return {hi - lo < 1e-6 && result.stats.mutations == 0 && t < 10.0,
          "giant component " + std::to_string(giant.size()) + "/" + std::to_string(kDeskN) +
              ", gap " + fmt("%.2e", hi - lo) + ", " + fmt("%.2f s", t)};
}

struct PeakLawData {
  std::vector<std::vector<Histogram>> per_d;  // [d][replicate]
  double seconds = 0.0;
};

const std::vector<double> kPeakLawD = {0.1, 0.15, 0.25, 0.4};

PeakLawData peak_law_runs() {
  const auto t0 = Clock::now();
  PeakLawData data;
  for (double d : kPeakLawD) data.per_d.push_back(desk_histograms(MutationProfile::uniform(0.01), d));
  data.seconds = seconds_since(t0);
  return data;
}

Verdict peak_count_law(const PeakLawData& data) {
  bool pass = data.seconds < 300.0;
  std::string detail;
  for (std::size_t k = 0; k < kPeakLawD.size(); ++k) {
    const double d = kPeakLawD[k];
    const double target = std::round(1.0 / (2.0 * d));
    double mean = 0.0;
    for (const auto& h : data.per_d[k]) mean += static_cast<double>(detect_peaks(h.density()).size());
    mean /= static_cast<double>(data.per_d[k].size());
    pass = pass && std::abs(mean - target) <= 1.0;
    detail += fmt("d=%.2f: ", d) + fmt("%.1f", mean) + " vs " + fmt("%.0f", target) + "; ";
  }
  return {pass, detail + fmt("%.1f s", data.seconds)};
}

Verdict uniform_peak_heights(const PeakLawData& data) {
  const auto peaks = detect_peaks(pooled_density(data.per_d[0]));
  if (peaks.size() < 3) {
    return {false, "only " + std::to_string(peaks.size()) + " peaks, no interior peaks"};
  }
  double lo = peaks[1].height;
  double hi = peaks[1].height;
  for (std::size_t k = 1; k + 1 < peaks.size(); ++k) {
    lo = std::min(lo, peaks[k].height);
    hi = std::max(hi, peaks[k].height);
  }
  return {hi / lo < 1.5, std::to_string(peaks.size()) + " peaks, " +
                             std::to_string(peaks.size() - 2) + " interior, max/min height " +
                             fmt("%.3f", hi / lo)};
}

// The uniform profile is exactly mirror-invariant, so its pooled value is reported as the
// finite-sample floor of the metric; it does not enter the verdict.
Verdict symmetric_profile_symmetry(const PeakLawData& data, double& asym_l1_out,
                                   std::vector<double>& asym_density_out) {
  const auto sym = pooled_density(desk_histograms(MutationProfile::symmetric(0.01, -0.02), 0.1));
  asym_density_out = pooled_density(desk_histograms(MutationProfile::asymmetric(0.01, 0.02), 0.1));
  const double sym_l1 = symmetry_l1(sym);
  asym_l1_out = symmetry_l1(asym_density_out);
  const auto sym_mass = mass_split(sym);
  return {sym_l1 < 0.15 && asym_l1_out > 0.15,
          "sym(alpha=-0.02) " + fmt("%.4f", sym_l1) + " < 0.15, asym(alpha=0.02) " +
              fmt("%.4f", asym_l1_out) + " > 0.15 [uniform reference " +
              fmt("%.4f", symmetry_l1(pooled_density(data.per_d[0]))) + ", sym mass above 0.5 " +
              fmt("%.4f", sym_mass.above) + "]"};
}

Verdict asymmetric_mass_shift(const std::vector<double>& asym_density) {
  const auto m = mass_split(asym_density);
  return {m.above < m.below,
          "mass above 0.5 " + fmt("%.4f", m.above) + " < below " + fmt("%.4f", m.below)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict sweep_determinism() {
  const auto t0 = Clock::now();
  const fs::path root = fs::path(BCNOISE_TEST_TMP) / "determinism";
  fs::remove_all(root);
  std::vector<std::string> files;
  for (const char* workers : {"1", "4", "8"}) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::main({"sweep", "--n", "2000", "--degree", "10", "--steps", "10000000",
                                "--window", "1000", "--d-start", "0.1", "--d-end", "0.5",
                                "--d-step", "0.05", "--replicates", "2", "--seed", "5",
                                "--workers", workers, "--quiet", "--out", root.string(), "--name",
                                std::string("w") + workers},
                               out, err);
    if (code != 0) return {false, "sweep exited with " + std::to_string(code) + ": " + err.str()};
    files.push_back(slurp(root / (std::string("w") + workers) / "bifurcation.csv"));
  }
  const std::size_t columns =
      static_cast<std::size_t>(std::count(files[0].begin(), files[0].begin() + files[0].find('\n'), ','));
  const bool same = files[0] == files[1] && files[0] == files[2];
  const double t = seconds_since(t0);
  return {same && columns == 9 && t < 120.0,
          std::to_string(columns) + " d columns, workers 1/4/8 " +
              (same ? "byte-identical" : "DIFFER") + ", " + fmt("%.1f s", t)};
}

Verdict er_statistics() {
  const std::size_t n = 10'000;
  const double k = 10.0;
  const double p = k / static_cast<double>(n - 1);
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  const double sigma = std::sqrt(pairs * p * (1.0 - p));
  double total = 0.0;
  for (std::uint64_t r = 0; r < 100; ++r) {
    Rng rng(derive_seed(kMasterSeed, r, 0, StreamTag::Network));
    total += static_cast<double>(generate_er(n, k, rng).edge_count());
  }
  const double mean = total / 100.0;
  const double sigma_mean = sigma / 10.0;
  return {std::abs(mean - 5e4) < 3.0 * sigma_mean,
          "mean edges " + fmt("%.1f", mean) + ", |dev| " + fmt("%.1f", std::abs(mean - 5e4)) +
              " < 3 sigma_mean = " + fmt("%.1f", 3.0 * sigma_mean)};
}

Verdict throughput() {
  const auto t0 = Clock::now();
  Rng rng(derive_seed(kMasterSeed, 0, 0, StreamTag::Network));
  const Graph g = generate_er(10'000, 10.0, rng);
  SimConfig cfg;
  cfg.tolerance = 0.1;
  cfg.total_steps = 50'000'000;
  cfg.window = 1000;
  cfg.seed = derive_seed(kMasterSeed, 0, 0, StreamTag::Dynamics);
  const auto result = run(g, cfg, MutationProfile::uniform(0.01));
  const double t = seconds_since(t0);
  return {t < 60.0 && result.stats.steps == cfg.total_steps,
          "N=1e4, T=5e7: " + fmt("%.2f s", t) + " (" +
              fmt("%.1f", static_cast<double>(cfg.total_steps) / t / 1e6) + " M events/s)"};
}

}  // namespace

int main() {
  int failures = 0;
  const auto report = [&](int id, const char* name, const Verdict& v) {
    std::printf("[%s] %2d %-40s %s\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failures;
  };

  report(1, "conservation & contraction", conservation_and_contraction());
  report(2, "mean mutation rate preserved", mean_preservation());
  report(3, "pure bounded-confidence consensus", pure_deffuant_consensus());
  const auto peak_data = peak_law_runs();
  report(4, "peak count ~ 1/(2d)", peak_count_law(peak_data));
  report(5, "uniform profile: equal peak heights", uniform_peak_heights(peak_data));
  double asym_l1 = 0.0;
  std::vector<double> asym_density;
  report(6, "symmetric profile: symmetric density",
         symmetric_profile_symmetry(peak_data, asym_l1, asym_density));
  report(7, "asymmetric profile: mass shift", asymmetric_mass_shift(asym_density));
  report(8, "sweep determinism across workers", sweep_determinism());
  report(9, "ER edge statistics", er_statistics());
  report(10, "full-scale throughput", throughput());

  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
