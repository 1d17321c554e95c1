/// @file  solver.hpp
/// @brief Iteratively reweighted proximal solver with singular value
///        thresholding.

#pragma once

#include <utility>
#include <vector>

#include <lore/types.hpp>

namespace lore {

/// Per-iteration record of one thresholding step.
struct SvtStepRecord {
    /// Singular values of the gradient-stepped matrix Z - (1/mu) * grad,
    /// descending.
    std::vector<double> shifted_singulars;
    /// Per-direction thresholds (lambda * p / mu) * sigma_prev^(p-1);
    /// +infinity where sigma_prev has already collapsed to zero.
    std::vector<double> weights;
    /// Number of strictly positive values after thresholding.
    int kept_count = 0;
};

/// Draws an n x ambient_dim matrix of i.i.d. Gaussian entries with mean 0
/// and variance cfg.init_variance, deterministically from cfg.seed.
Embedding init_embedding(int n, int ambient_dim, const SolverConfig& cfg);

/// One proximal update: SVD of the gradient-stepped matrix, per-direction
/// thresholds weighted by the previous iterate's singular values
/// (sigma_prev, descending), negative values zeroed, then reconstruction
/// at the original N x d' shape.
///
/// With lambda = 0 every threshold is zero and the result is the plain
/// gradient step up to SVD round-trip error.
std::pair<Embedding, SvtStepRecord> svt_step(const Embedding& z,
                                             const Matrix& grad,
                                             const Vector& sigma_prev,
                                             const SolverConfig& cfg);

/// Runs the full solver loop: evaluate the objective, stop when its change
/// falls below cfg.tol, otherwise take an svt_step and stop when the
/// max-norm iterate change falls below cfg.tol; hard cap at cfg.max_iters.
///
/// The optimized objective (and the recorded objective_trace) uses the
/// triplet-mean loss plus lambda times the Schatten term; cfg.mu bounds the
/// mean-loss gradient's Lipschitz constant, so the step size 1/mu is only
/// stable against the per-triplet average.
///
/// Throws SvdFailure if the SVD does not converge and NonFiniteObjective
/// if the objective leaves the finite range (divergence).
FitResult fit_lore(const TripletSet& ts, int n_items, int ambient_dim,
                   const SolverConfig& cfg);

}  // namespace lore
