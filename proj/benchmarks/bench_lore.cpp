// Microbenchmarks for the hot paths: loss/gradient evaluation, one
// thresholding step and a full fit. The per-iteration cost should scale as
// O(d'(T + N d')); the --benchmark_filter flag narrows runs.

#include <benchmark/benchmark.h>

#include <lore/datagen.hpp>
#include <lore/objective.hpp>
#include <lore/solver.hpp>

namespace {

struct BenchData {
    lore::TripletSet train;
    lore::Embedding z;
};

BenchData make_data(int n_items, double query_fraction, int ambient_dim) {
    lore::GenConfig gen;
    gen.n_items = n_items;
    gen.intrinsic_rank = 5;
    gen.query_fraction = query_fraction;
    gen.test_size = 10;
    gen.seed = 1;
    const auto space = lore::generate_space(gen);
    auto [train, test] = lore::sample_triplets(space, gen);
    lore::SolverConfig cfg;
    cfg.seed = 1;
    return {std::move(train), lore::init_embedding(n_items, ambient_dim, cfg)};
}

void bm_smoothed_loss(benchmark::State& state) {
    const auto data = make_data(50, 0.1 * state.range(0), 15);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lore::smoothed_loss(data.z, data.train));
    }
    state.SetItemsProcessed(state.iterations() * data.train.size());
}
BENCHMARK(bm_smoothed_loss)->Arg(1)->Arg(2)->Arg(4);

void bm_loss_gradient(benchmark::State& state) {
    const auto data = make_data(50, 0.1 * state.range(0), 15);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lore::smoothed_loss_gradient(data.z, data.train));
    }
    state.SetItemsProcessed(state.iterations() * data.train.size());
}
BENCHMARK(bm_loss_gradient)->Arg(1)->Arg(2)->Arg(4);

void bm_svt_step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto data = make_data(n, 0.1, 15);
    const lore::Matrix grad = lore::smoothed_loss_gradient(data.z, data.train);
    Eigen::JacobiSVD<lore::Matrix> svd(data.z.matrix);
    const lore::Vector sigma = svd.singularValues();
    lore::SolverConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lore::svt_step(data.z, grad, sigma, cfg));
    }
}
BENCHMARK(bm_svt_step)->Arg(25)->Arg(50)->Arg(100);

void bm_fit_lore(benchmark::State& state) {
    const auto data = make_data(50, 0.1, 15);
    lore::SolverConfig cfg;
    cfg.seed = 1;
    cfg.max_iters = static_cast<int>(state.range(0));
    cfg.tol = 1e-300;  // force a fixed iteration count
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            lore::fit_lore(data.train, 50, 15, cfg));
    }
    state.SetItemsProcessed(state.iterations() * cfg.max_iters);
}
BENCHMARK(bm_fit_lore)->Arg(25)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
