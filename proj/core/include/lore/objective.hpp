/// @file  objective.hpp
/// @brief Smoothed triplet loss, its gradient, the Schatten-p quasi-norm and
///        the composite objective.

#pragma once

#include <lore/types.hpp>

namespace lore {

/// Decomposition of the composite objective for one embedding.
struct ObjectiveValue {
    double loss = 0.0;         ///< smoothed triplet loss f(Z)
    double regularizer = 0.0;  ///< sum of singular values raised to p
    double lambda = 0.0;
    double total = 0.0;        ///< loss + lambda * regularizer
};

/// Overflow-safe softplus log(1 + e^x); returns x directly for x > 30.
double softplus(double x);

/// Numerically stable logistic function 1 / (1 + e^-x).
double sigmoid(double x);

/// Hinge argument 1 + ||Z_a - Z_i|| - ||Z_a - Z_j|| for one triplet
/// (plain Euclidean row distances).
double triplet_margin(const Embedding& z, const Triplet& t);

/// Sum of softplus(margin) over all triplets.
double smoothed_loss(const Embedding& z, const TripletSet& ts);

/// Gradient of smoothed_loss with respect to the embedding.
/// Distance normalizations are guarded by `eps` so collapsed rows
/// (Z_a == Z_i) yield a finite gradient instead of a singularity.
Matrix smoothed_loss_gradient(const Embedding& z, const TripletSet& ts,
                              double eps = 1e-12);

/// Sum of all min(N, d') singular values raised to p, for p in (0, 1].
/// p = 1 is exactly the nuclear norm.
double schatten_quasi_norm(const Embedding& z, double p);

/// Full objective: smoothed loss plus lambda times the Schatten-p term.
ObjectiveValue evaluate_objective(const Embedding& z, const TripletSet& ts,
                                  const SolverConfig& cfg);

}  // namespace lore
