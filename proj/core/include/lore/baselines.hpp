/// @file  baselines.hpp
/// @brief Reference methods: unregularized fits and dimension-sweep
///        cross-validation.

#pragma once

#include <map>
#include <vector>

#include <lore/types.hpp>

namespace lore {

/// Outcome of a cross-validated dimension sweep.
struct DimSweepResult {
    int selected_dim = 0;
    std::map<int, double> per_dim_cv_accuracy;  ///< candidate dim -> mean held-out accuracy
    Embedding embedding;  ///< refit at selected_dim on all training triplets
    double wall_time_seconds = 0.0;
};

/// The solver loop with the regularizer switched off (lambda forced to 0):
/// plain gradient descent with step 1/mu through the degenerate
/// thresholding path.
FitResult fit_unregularized(const TripletSet& ts, int n_items, int ambient_dim,
                            const SolverConfig& cfg);

/// k-fold cross-validation over candidate embedding dimensions. Folds are a
/// deterministic round-robin over a seed-shuffled triplet order. Selection
/// uses a one-standard-error rule biased toward smaller dimensions: the
/// smallest candidate whose mean held-out accuracy is within one pooled
/// standard deviation of the best mean wins, then the winner is refit on
/// all triplets.
///
/// Throws InsufficientTriplets when any fold's training partition is empty.
DimSweepResult dim_sweep_cv(const TripletSet& ts, int n_items,
                            const std::vector<int>& candidate_dims, int folds,
                            const SolverConfig& cfg);

}  // namespace lore
