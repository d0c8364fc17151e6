#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcnoise/dynamics.hpp"
#include "bcnoise/measure.hpp"
#include "bcnoise/network.hpp"
#include "bcnoise/profile.hpp"

namespace bcnoise {

/// Full experiment: one ER network per replicate, reused for every tolerance
/// on the grid; each (replicate, d) task starts from fresh initial opinions.
struct SweepPlan {
  double d_start = 0.1;
  double d_end = 0.75;
  double d_step = 0.005;
  std::size_t replicates = 10;
  SimConfig base;  // tolerance and seed are overwritten per task
  std::size_t n = 10'000;
  double avg_degree = 10.0;
  MutationProfile profile = MutationProfile::uniform(0.01);
  std::uint64_t master_seed = 1;
};

void validate(const SweepPlan& plan);

/// d_start + i * d_step for i = 0 .. floor((d_end - d_start) / d_step), with a
/// 1e-9 allowance so that decimal grids include their end point, and each
/// value rounded to 12 decimals.
std::vector<double> d_grid(const SweepPlan& plan);

enum class StreamTag : std::uint64_t { Network = 1, Dynamics = 2 };

/// Seed for one random stream. Each word is absorbed with the SplitMix64
/// finalizer (increment 0x9E3779B97F4A7C15, multipliers 0xBF58476D1CE4E5B9 and
/// 0x94D049BB133111EB, shifts 30/27/31):
///   h = mix(master); h = mix(h ^ tag + g); h = mix(h ^ replicate + g);
///   h = mix(h ^ d_index + g)
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate, std::uint64_t d_index,
                          StreamTag tag);

struct SweepTask {
  std::size_t replicate = 0;
  std::size_t d_index = 0;
  double d = 0.0;
  std::uint64_t network_seed = 0;  // shared by all tasks of a replicate
  std::uint64_t seed = 0;          // dynamics stream
};

/// R * M tasks, replicate-major. ParamError on an empty grid or bad plan.
std::vector<SweepTask> plan_tasks(const SweepPlan& plan);

Graph replicate_network(const SweepPlan& plan, std::size_t replicate);
RunResult run_task(const SweepPlan& plan, const Graph& network, const SweepTask& task);

struct BifurcationMap {
  std::vector<double> d_values;
  std::vector<std::vector<double>> densities;  // one normalized row per d
};

struct SweepResult {
  BifurcationMap map;
  std::vector<Histogram> merged;  // per d, counts summed over replicates
  std::vector<SweepTask> tasks;
  std::vector<RunStats> task_stats;  // parallel to tasks
  std::vector<DegreeStats> networks;  // per replicate
};

/// A task threw; carries its grid coordinates.
class SweepError : public std::runtime_error {
 public:
  SweepError(const SweepTask& task, const std::string& cause);
  std::size_t replicate() const noexcept { return replicate_; }
  std::size_t d_index() const noexcept { return d_index_; }

 private:
  std::size_t replicate_;
  std::size_t d_index_;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every task on a fixed pool of `workers` threads. Results land in
/// index-addressed slots, so the output does not depend on the worker count
/// or completion order.
SweepResult execute(const SweepPlan& plan, std::size_t workers, const ProgressFn& progress = {});

}  // namespace bcnoise
