/// @file  metrics.hpp
/// @brief Evaluation of fitted embeddings: triplet accuracy, numerical rank,
///        subspace alignment, NPD, PSNR and principal-axis orderings.

#pragma once

#include <vector>

#include <lore/types.hpp>

namespace lore {

/// Result of mapping an embedding into the ground-truth frame.
struct AlignmentResult {
    Matrix aligned;     ///< N x d, the embedding expressed in P's frame
    Matrix projection;  ///< d' x d Tikhonov-regularized linear map
    double eta = 1e-3;  ///< ridge parameter used
};

/// Items ordered along one principal axis of the centered embedding.
struct AxisOrdering {
    int component_index = 0;        ///< 0-based component number
    std::vector<int> item_order;    ///< items sorted by projection, ascending
    std::vector<double> projections; ///< projection value per item
};

/// Fraction of triplets (a,i,j) with ||Z_a - Z_i|| strictly less than
/// ||Z_a - Z_j||. Exact ties count as unsatisfied. Throws EmptyTestSet.
double triplet_accuracy(const Embedding& z, const TripletSet& ts);

/// Count of singular values above max(N, d') * machine_epsilon * sigma_1.
int measured_rank(const Embedding& z);

/// Centers both matrices, solves the ridge-regularized least squares map
/// from the centered embedding onto the centered ground truth, and restores
/// the ground-truth mean offset.
AlignmentResult align_subspace(const PerceptualSpace& space, const Embedding& z,
                               double eta = 1e-3);

/// ||P - Z_aligned||_F / ||Z_c||_F. Throws DegenerateEmbedding when the
/// centered embedding is (near-)zero.
double normalized_procrustes_distance(const PerceptualSpace& space,
                                      const Embedding& z, double eta = 1e-3);

/// 20 * log10(max entry of Z_aligned / ||Z_aligned - P||_F), in decibels.
/// Returns +infinity on (near-)perfect reconstruction; throws
/// NonPositivePeak when the aligned matrix has no positive entry.
double psnr(const PerceptualSpace& space, const Embedding& z,
            double eta = 1e-3);

/// Top-k principal axes of the centered embedding with per-axis item
/// orderings. Each component's sign is fixed so its largest-magnitude
/// loading is positive, making the orderings deterministic.
std::vector<AxisOrdering> principal_axes(const Embedding& z, int k);

}  // namespace lore
