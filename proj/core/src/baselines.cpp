#include <lore/baselines.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include <lore/metrics.hpp>
#include <lore/solver.hpp>

#include "stream_seed.hpp"

namespace lore {

FitResult fit_unregularized(const TripletSet& ts, int n_items, int ambient_dim,
                            const SolverConfig& cfg) {
    SolverConfig unregularized = cfg;
    unregularized.lambda = 0.0;
    return fit_lore(ts, n_items, ambient_dim, unregularized);
}

DimSweepResult dim_sweep_cv(const TripletSet& ts, int n_items,
                            const std::vector<int>& candidate_dims, int folds,
                            const SolverConfig& cfg) {
    if (folds < 2) throw ConfigError("dim_sweep_cv: folds must be at least 2");
    if (candidate_dims.empty())
        throw ConfigError("dim_sweep_cv: candidate_dims must be nonempty");
    validate_triplet_set(ts, n_items);

    const auto start = std::chrono::steady_clock::now();

    // round-robin fold assignment over a seed-shuffled triplet order
    std::vector<std::size_t> order(ts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(detail::mix_seed(cfg.seed, detail::kFoldStream));
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<TripletSet> fold_sets(folds, TripletSet{{}, n_items});
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        fold_sets[pos % folds].triplets.push_back(ts.triplets[order[pos]]);
    }
    for (int f = 0; f < folds; ++f) {
        if (ts.size() - fold_sets[f].size() == 0) {
            throw InsufficientTriplets(
                "dim_sweep_cv: fold " + std::to_string(f) +
                " leaves an empty training partition");
        }
    }

    struct Task {
        int dim_index;
        int fold;
    };
    std::vector<Task> tasks;
    for (int di = 0; di < static_cast<int>(candidate_dims.size()); ++di) {
        for (int f = 0; f < folds; ++f) {
            if (!fold_sets[f].empty()) tasks.push_back({di, f});
        }
    }

    // fold accuracies indexed by task; fits are independent, reduction below
    // runs in candidate-dim order so results are deterministic
    std::vector<double> fold_accuracy(tasks.size(), 0.0);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size();
             i = next.fetch_add(1)) {
            const Task& task = tasks[i];
            TripletSet train{{}, n_items};
            train.triplets.reserve(ts.size() - fold_sets[task.fold].size());
            for (int f = 0; f < folds; ++f) {
                if (f == task.fold) continue;
                train.triplets.insert(train.triplets.end(),
                                      fold_sets[f].triplets.begin(),
                                      fold_sets[f].triplets.end());
            }
            const FitResult fit = fit_unregularized(
                train, n_items, candidate_dims[task.dim_index], cfg);
            fold_accuracy[i] =
                triplet_accuracy(fit.embedding, fold_sets[task.fold]);
        }
    };
    const unsigned pool = std::min<unsigned>(
        std::max(1u, std::thread::hardware_concurrency()), tasks.size());
    std::vector<std::thread> threads;
    for (unsigned w = 1; w < pool; ++w) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();

    DimSweepResult result;
    double best_mean = -1.0;
    double pooled_ss = 0.0;
    int pooled_dof = 0;
    std::vector<double> means(candidate_dims.size(), 0.0);
    for (std::size_t di = 0; di < candidate_dims.size(); ++di) {
        double sum = 0.0;
        int count = 0;
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            if (tasks[i].dim_index == static_cast<int>(di)) {
                sum += fold_accuracy[i];
                ++count;
            }
        }
        const double mean = sum / count;
        means[di] = mean;
        result.per_dim_cv_accuracy[candidate_dims[di]] = mean;
        best_mean = std::max(best_mean, mean);
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            if (tasks[i].dim_index == static_cast<int>(di)) {
                pooled_ss += (fold_accuracy[i] - mean) * (fold_accuracy[i] - mean);
            }
        }
        pooled_dof += count - 1;
    }
    const double pooled_std =
        pooled_dof > 0 ? std::sqrt(pooled_ss / pooled_dof) : 0.0;

    bool found = false;
    for (std::size_t di = 0; di < candidate_dims.size(); ++di) {
        if (means[di] >= best_mean - pooled_std &&
            (!found || candidate_dims[di] < result.selected_dim)) {
            result.selected_dim = candidate_dims[di];
            found = true;
        }
    }

    const FitResult refit =
        fit_unregularized(ts, n_items, result.selected_dim, cfg);
    result.embedding = refit.embedding;
    result.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

}  // namespace lore
