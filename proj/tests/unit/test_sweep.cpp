#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_set>

#include "bcnoise/errors.hpp"
#include "bcnoise/io.hpp"
#include "bcnoise/sweep.hpp"

using namespace bcnoise;

namespace {

SweepPlan small_plan() {
  SweepPlan plan;
  plan.d_start = 0.2;
  plan.d_end = 0.4;
  plan.d_step = 0.1;
  plan.replicates = 3;
  plan.n = 120;
  plan.avg_degree = 6.0;
  plan.base.total_steps = 20'000;
  plan.base.window = 200;
  plan.base.bins = 40;
  plan.profile = MutationProfile::symmetric(0.02, 0.04);
  plan.master_seed = 2718;
  return plan;
}

std::string csv_of(const BifurcationMap& map) {
  std::ostringstream out;
  io::write_bifurcation_csv(out, map);
  return out.str();
}

}  // namespace

TEST_CASE("grid and task planning") {
  SweepPlan defaults;
  const auto grid = d_grid(defaults);
  CHECK(grid.size() == 131);
  CHECK(grid.front() == 0.1);
  CHECK(grid.back() == 0.75);
  CHECK(grid[1] == 0.105);
  CHECK(plan_tasks(defaults).size() == 1310);

  SweepPlan single = defaults;
  single.d_start = single.d_end = 0.3;
  CHECK(d_grid(single).size() == 1);
  single.replicates = 1;
  const auto one = plan_tasks(single);
  REQUIRE(one.size() == 1);
  CHECK(one[0].d == 0.3);

  SweepPlan bad = defaults;
  bad.d_start = 0.5;
  bad.d_end = 0.4;
  CHECK_THROWS_AS(plan_tasks(bad), ParamError);
  bad = defaults;
  bad.d_step = 0.0;
  CHECK_THROWS_AS(plan_tasks(bad), ParamError);
  bad = defaults;
  bad.replicates = 0;
  CHECK_THROWS_AS(plan_tasks(bad), ParamError);
}

TEST_CASE("tasks of one replicate share a network seed") {
  const auto plan = small_plan();
  const auto tasks = plan_tasks(plan);
  REQUIRE(tasks.size() == 9);
  std::unordered_set<std::uint64_t> dynamics_seeds;
  for (const auto& t : tasks) {
    CHECK(t.network_seed == tasks[t.replicate * 3].network_seed);
    dynamics_seeds.insert(t.seed);
  }
  CHECK(dynamics_seeds.size() == 9);
  CHECK(tasks[0].network_seed != tasks[3].network_seed);
}

TEST_CASE("derive_seed") {
  CHECK(derive_seed(1, 2, 3, StreamTag::Dynamics) == derive_seed(1, 2, 3, StreamTag::Dynamics));
  CHECK(derive_seed(1, 2, 3, StreamTag::Dynamics) != derive_seed(1, 2, 3, StreamTag::Network));
  CHECK(derive_seed(1, 2, 3, StreamTag::Dynamics) != derive_seed(1, 3, 2, StreamTag::Dynamics));

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(2'000'000);
  for (std::uint64_t master : {0ULL, 1ULL}) {
    for (std::uint64_t r = 0; r < 1000; ++r) {
      for (std::uint64_t i = 0; i < 500; ++i) {
        seen.insert(derive_seed(master, r, i, StreamTag::Dynamics));
      }
    }
  }
  CHECK(seen.size() == 1'000'000);
}

TEST_CASE("execute is independent of the worker count") {
  const auto plan = small_plan();
  const auto serial = execute(plan, 1);
  for (std::size_t workers : {2u, 4u, 8u}) {
    const auto parallel = execute(plan, workers);
    CHECK(csv_of(parallel.map) == csv_of(serial.map));
    CHECK(parallel.merged == serial.merged);
  }
  CHECK_THROWS_AS(execute(plan, 0), ParamError);
}

TEST_CASE("rows are normalized sums of replicate counts") {
  const auto plan = small_plan();
  const auto result = execute(plan, 3);
  REQUIRE(result.map.densities.size() == 3);

  std::vector<Graph> nets;
  for (std::size_t r = 0; r < plan.replicates; ++r) nets.push_back(replicate_network(plan, r));

  // Manual replay in a shuffled order: per-task output only depends on the task.
  auto tasks = plan_tasks(plan);
  std::mt19937_64 gen(1);
  std::shuffle(tasks.begin(), tasks.end(), gen);
  std::vector<Histogram> manual(3, Histogram(plan.base.bins));
  for (const auto& t : tasks) manual[t.d_index] += run_task(plan, nets[t.replicate], t).histogram;
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(manual[i] == result.merged[i]);
    CHECK(manual[i].density() == result.map.densities[i]);
    CHECK(result.merged[i].samples() == plan.replicates * plan.n * plan.base.window);
  }
}

TEST_CASE("one task: map row equals the task's normalized histogram") {
  auto plan = small_plan();
  plan.replicates = 1;
  plan.d_end = plan.d_start;
  const auto result = execute(plan, 4);
  const auto tasks = plan_tasks(plan);
  const auto direct = run_task(plan, replicate_network(plan, 0), tasks[0]);
  REQUIRE(result.map.densities.size() == 1);
  CHECK(result.map.densities[0] == direct.histogram.density());
  CHECK(result.task_stats[0].steps == plan.base.total_steps);
}

TEST_CASE("progress reports every task") {
  const auto plan = small_plan();
  std::size_t calls = 0;
  std::size_t last = 0;
  execute(plan, 4, [&](std::size_t done, std::size_t total) {
    ++calls;
    last = done;
    CHECK(total == 9);
  });
  CHECK(calls == 9);
  CHECK(last == 9);
}

TEST_CASE("SweepError names the failing task") {
  SweepTask t;
  t.replicate = 3;
  t.d_index = 17;
  t.d = 0.185;
  const SweepError e(t, "boom");
  CHECK(e.replicate() == 3);
  CHECK(e.d_index() == 17);
  CHECK(std::string(e.what()).find("replicate 3") != std::string::npos);
  CHECK(std::string(e.what()).find("d_index 17") != std::string::npos);
}
