// Serial reference vs OpenMP kernels. The benchmark argument is the thread
// count; 0 selects the serial path.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tropfw/matroid.hpp"
#include "tropfw/msc.hpp"
#include "tropfw/phylo.hpp"
#include "tropfw/projection.hpp"

using namespace tropfw;

namespace {

std::vector<TropicalPoint> random_points(int count, int q) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<TropicalPoint> xs;
  xs.reserve(count);
  for (int i = 0; i < count; ++i) {
    std::vector<double> x(q);
    for (double& c : x) c = u(gen);
    xs.emplace_back(std::move(x));
  }
  return xs;
}

void BM_project_many(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  const Matroid m = graphic_matroid(6);
  const auto xs = random_points(2000, m.ground_size());
  for (auto _ : state) {
    auto out = threads == 0 ? project_many_serial(m, xs) : project_many_parallel(m, xs, threads);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(xs.size()));
}

void BM_experiment(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  ExperimentConfig c;
  c.species_tree = read_newick_file(TROPFW_DATA_DIR "/t1.nwk").front();
  c.Ne = {30000};
  c.sigma = {1};
  c.n = {15};
  c.trials = 10;
  c.pool_size = 100;
  c.master_seed = 3;
  for (auto _ : state) {
    auto out = threads == 0 ? run_experiment_serial(c) : run_experiment_parallel(c, threads);
    benchmark::DoNotOptimize(out);
  }
}

void BM_hausdorff(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  HausdorffConfig c;
  c.n = {3, 5};
  c.q = {3, 4};
  c.replicates = 50;
  c.seed = 5;
  for (auto _ : state) {
    auto out = threads == 0 ? hausdorff_experiment_serial(c) : hausdorff_experiment_parallel(c, threads);
    benchmark::DoNotOptimize(out);
  }
}

void BM_moments(benchmark::State& state) {
  const int threads = std::max(1, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto out = estimate_norm_moments(100, 20000, 13, threads);
    benchmark::DoNotOptimize(out);
  }
}

}  // namespace

BENCHMARK(BM_project_many)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_experiment)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hausdorff)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_moments)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
