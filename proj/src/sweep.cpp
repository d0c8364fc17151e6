#include "bcnoise/sweep.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "bcnoise/errors.hpp"

namespace bcnoise {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Pulls indices [0, count) from a shared counter on `workers` threads. The
// first exception stops further pulls and is rethrown to the caller.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto worker = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  const std::size_t n_threads = std::min(workers, count);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

void validate(const SweepPlan& plan) {
  if (!(plan.d_step > 0.0)) throw ParamError("d-step must be > 0");
  if (!(plan.d_start <= plan.d_end)) throw ParamError("d-start must be <= d-end");
  if (!(plan.d_start > 0.0 && plan.d_end <= 1.0)) {
    throw ParamError("tolerance grid must lie in (0, 1]");
  }
  if (plan.replicates == 0) throw ParamError("replicates must be >= 1");
  if (plan.n < 2) throw ParamError("n must be >= 2");
  if (!(plan.avg_degree >= 0.0) || plan.avg_degree > static_cast<double>(plan.n - 1)) {
    throw ParamError("degree must lie in [0, n-1]");
  }
  SimConfig probe = plan.base;
  probe.tolerance = plan.d_start;
  validate(probe);
}

std::vector<double> d_grid(const SweepPlan& plan) {
  if (!(plan.d_step > 0.0) || !(plan.d_start <= plan.d_end)) {
    throw ParamError("empty tolerance grid");
  }
  const auto m =
      static_cast<std::size_t>(std::floor((plan.d_end - plan.d_start) / plan.d_step + 1e-9)) + 1;
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double raw = plan.d_start + static_cast<double>(i) * plan.d_step;
    out[i] = std::round(raw * 1e12) / 1e12;
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate, std::uint64_t d_index,
                          StreamTag tag) {
  std::uint64_t h = mix64(master);
  h = mix64((h ^ static_cast<std::uint64_t>(tag)) + kGamma);
  h = mix64((h ^ replicate) + kGamma);
  h = mix64((h ^ d_index) + kGamma);
  return h;
}

std::vector<SweepTask> plan_tasks(const SweepPlan& plan) {
  validate(plan);
  const auto grid = d_grid(plan);
  std::vector<SweepTask> tasks;
  tasks.reserve(plan.replicates * grid.size());
  for (std::size_t r = 0; r < plan.replicates; ++r) {
    const std::uint64_t net_seed = derive_seed(plan.master_seed, r, 0, StreamTag::Network);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      tasks.push_back(
          {r, i, grid[i], net_seed, derive_seed(plan.master_seed, r, i, StreamTag::Dynamics)});
    }
  }
  return tasks;
}

Graph replicate_network(const SweepPlan& plan, std::size_t replicate) {
  Rng rng(derive_seed(plan.master_seed, replicate, 0, StreamTag::Network));
  return generate_er(plan.n, plan.avg_degree, rng);
}

RunResult run_task(const SweepPlan& plan, const Graph& network, const SweepTask& task) {
  SimConfig cfg = plan.base;
  cfg.tolerance = task.d;
  cfg.seed = task.seed;
  return run(network, cfg, plan.profile);
}

SweepError::SweepError(const SweepTask& task, const std::string& cause)
    : std::runtime_error("task (replicate " + std::to_string(task.replicate) + ", d_index " +
                         std::to_string(task.d_index) + ", d=" + std::to_string(task.d) +
                         ") failed: " + cause),
      replicate_(task.replicate),
      d_index_(task.d_index) {}

SweepResult execute(const SweepPlan& plan, std::size_t workers, const ProgressFn& progress) {
  if (workers == 0) throw ParamError("workers must be >= 1");
  SweepResult out;
  out.tasks = plan_tasks(plan);
  out.map.d_values = d_grid(plan);
  const std::size_t m = out.map.d_values.size();

  std::vector<Graph> networks(plan.replicates);
  parallel_for(plan.replicates, workers,
               [&](std::size_t r) { networks[r] = replicate_network(plan, r); });
  for (const auto& g : networks) out.networks.push_back(degree_stats(g));

  // slot [d_index * R + replicate]
  std::vector<std::optional<Histogram>> slots(out.tasks.size());
  out.task_stats.resize(out.tasks.size());
  std::mutex progress_mutex;
  std::size_t done = 0;
  parallel_for(out.tasks.size(), workers, [&](std::size_t k) {
    const SweepTask& task = out.tasks[k];
    try {
      auto result = run_task(plan, networks[task.replicate], task);
      slots[task.d_index * plan.replicates + task.replicate] = std::move(result.histogram);
      out.task_stats[k] = result.stats;
    } catch (const std::exception& e) {
      throw SweepError(task, e.what());
    }
    if (progress) {
      std::lock_guard lock(progress_mutex);
      progress(++done, out.tasks.size());
    }
  });

  out.merged.assign(m, Histogram(plan.base.bins));
  out.map.densities.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t r = 0; r < plan.replicates; ++r) out.merged[i] += *slots[i * plan.replicates + r];
    out.map.densities[i] = out.merged[i].density();
  }
  return out;
}

}  // namespace bcnoise
