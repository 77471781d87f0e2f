#include <benchmark/benchmark.h>

#include <vector>

#include "skewlab/bounds.hpp"
#include "skewlab/channel_bounds.hpp"
#include "skewlab/random.hpp"
#include "skewlab/skew_info.hpp"

namespace {

using namespace skewlab;

const SkewParams kParams(0.3, 0.4, 0.5);

void BM_SkewInfoOperator(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const DensityMatrix rho = ginibre_density(d, Seed{11});
  const Matrix e = random_hermitian(d, Seed{12}).matrix();
  for (auto _ : state) {
    benchmark::DoNotOptimize(skew_info_operator(rho, e, kParams));
  }
}
BENCHMARK(BM_SkewInfoOperator)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_SpectralOracle(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const DensityMatrix rho = ginibre_density(d, Seed{21});
  const Matrix e = random_hermitian(d, Seed{22}).matrix();
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral_oracle(rho, e, kParams));
  }
}
BENCHMARK(BM_SpectralOracle)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_DensityEigendecomposition(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const DensityMatrix rho = ginibre_density(d, Seed{31});
  const Matrix m = rho.matrix();
  for (auto _ : state) {
    benchmark::DoNotOptimize(DensityMatrix::from_matrix(m));
  }
}
BENCHMARK(BM_DensityEigendecomposition)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_ObservableTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = 4;
  const DensityMatrix rho = ginibre_density(d, Seed{41});
  std::vector<Observable> observables;
  for (int t = 0; t < n; ++t) {
    observables.push_back(
        random_hermitian(d, Seed{100 + static_cast<std::uint64_t>(t)}));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_table_observables(rho, observables, kParams));
  }
}
BENCHMARK(BM_ObservableTable)->Arg(2)->Arg(3)->Arg(5);

void BM_ObservableBounds(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = 4;
  const DensityMatrix rho = ginibre_density(d, Seed{51});
  std::vector<Observable> observables;
  for (int t = 0; t < n; ++t) {
    observables.push_back(
        random_hermitian(d, Seed{200 + static_cast<std::uint64_t>(t)}));
  }
  const PairwiseKTable table = build_table_observables(rho, observables, kParams);
  const WeightTriple w = WeightTriple::defaults();
  for (auto _ : state) {
    benchmark::DoNotOptimize(tightened_bound_1(table, w.w1));
    benchmark::DoNotOptimize(tightened_bound_2(table, w.w2));
    benchmark::DoNotOptimize(tightened_bound_3(table, w.w3));
    benchmark::DoNotOptimize(prior_bound_2(table));
    benchmark::DoNotOptimize(prior_bound_3(table));
  }
}
BENCHMARK(BM_ObservableBounds)->Arg(3)->Arg(5);

void BM_ChannelSearch(benchmark::State& state) {
  const int num_channels = static_cast<int>(state.range(0));
  const int kraus = static_cast<int>(state.range(1));
  const int d = 2;
  const DensityMatrix rho = ginibre_density(d, Seed{61});
  std::vector<KrausChannel> channels;
  for (int t = 0; t < num_channels; ++t) {
    channels.push_back(random_kraus_channel(
        d, kraus, Seed{300 + static_cast<std::uint64_t>(t)}));
  }
  const WeightTriple w = WeightTriple::defaults();
  SearchOptions options;
  options.seed = 7;
  for (auto _ : state) {
    const ChannelBoundEvaluator ev(rho, channels, kParams);
    benchmark::DoNotOptimize(optimal_channel_bound(ev, w, options));
  }
}
BENCHMARK(BM_ChannelSearch)->Args({2, 2})->Args({3, 2})->Args({2, 3});

void BM_HeuristicSearch(benchmark::State& state) {
  const int num_channels = 3;
  const int kraus = 4;
  const int d = 2;
  const DensityMatrix rho = ginibre_density(d, Seed{71});
  std::vector<KrausChannel> channels;
  for (int t = 0; t < num_channels; ++t) {
    channels.push_back(random_kraus_channel(
        d, kraus, Seed{400 + static_cast<std::uint64_t>(t)}));
  }
  const WeightTriple w = WeightTriple::defaults();
  SearchOptions options;
  options.seed = 7;
  options.exhaustive_limit = 1;  // force hill climbing
  options.restarts = 8;
  for (auto _ : state) {
    const ChannelBoundEvaluator ev(rho, channels, kParams);
    benchmark::DoNotOptimize(optimal_channel_bound(ev, w, options));
  }
}
BENCHMARK(BM_HeuristicSearch);

}  // namespace

BENCHMARK_MAIN();
