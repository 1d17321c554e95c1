/// @file  types.hpp
/// @brief Core domain types: spaces, embeddings, triplets and solver records.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include <lore/errors.hpp>

namespace lore {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Ground-truth item coordinates, known only in simulation.
/// The matrix is N x d with numerical rank exactly d (the generator
/// guarantees this) and d <= N.
struct PerceptualSpace {
    Matrix matrix;           ///< N x d coordinates
    int intrinsic_rank = 0;  ///< d

    int n_items() const { return static_cast<int>(matrix.rows()); }
};

/// Learned item coordinates, the solver's decision variable.
/// N x d' with all entries finite.
struct Embedding {
    Matrix matrix;  ///< N x d' coordinates

    int n_items() const { return static_cast<int>(matrix.rows()); }
    int ambient_dim() const { return static_cast<int>(matrix.cols()); }
};

/// One ordered comparison: item `anchor` is closer to `near` than to `far`.
/// Indices are 0-based and pairwise distinct.
struct Triplet {
    int anchor = 0;
    int near = 0;
    int far = 0;

    friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// An ordered list of triplets over items [0, n_items).
/// Duplicates are permitted (queries are sampled with replacement).
struct TripletSet {
    std::vector<Triplet> triplets;
    int n_items = 0;

    std::size_t size() const { return triplets.size(); }
    bool empty() const { return triplets.empty(); }
};

/// Hyperparameters of the regularized solver.
struct SolverConfig {
    double lambda = 0.01;       ///< regularization weight, >= 0
    double p = 0.5;             ///< Schatten exponent, in (0, 1]
    double mu = 0.1;            ///< inverse step size; must exceed the loss
                                ///< gradient's Lipschitz constant (~0.013)
    double tol = 1e-5;          ///< stopping tolerance
    int max_iters = 1000;       ///< unconditional iteration cap
    double init_variance = 5.0; ///< variance of the Gaussian initialization
    std::uint64_t seed = 0;     ///< PRNG seed for the initialization
};

/// Everything a fit produces besides the embedding itself.
struct FitResult {
    Embedding embedding;
    std::vector<double> objective_trace;      ///< objective value per iteration
    std::vector<double> iterate_delta_trace;  ///< Frobenius norm of each step
    int iterations_run = 0;
    bool converged = false;
    double wall_time_seconds = 0.0;
};

/// Evaluation summary for one fitted embedding.
/// npd / psnr_db are present only when a ground-truth space is known.
struct MetricsReport {
    double test_accuracy = 0.0;
    int measured_rank = 0;
    std::optional<double> npd;
    std::optional<double> psnr_db;
    double wall_time_seconds = 0.0;
};

/// Checks the TripletSet invariants against an item count `n`.
/// Returns normally iff every triplet has pairwise-distinct indices in
/// [0, n). Throws IndexOutOfRange or DegenerateTriplet carrying the 0-based
/// position of the first offending triplet.
void validate_triplet_set(const TripletSet& ts, int n);

}  // namespace lore
