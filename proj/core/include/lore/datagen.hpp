/// @file  datagen.hpp
/// @brief Synthetic perceptual spaces and simulated noisy triplet responses.

#pragma once

#include <cstdint>
#include <utility>

#include <lore/types.hpp>

namespace lore {

/// Generative-process parameters.
struct GenConfig {
    int n_items = 50;            ///< N
    int intrinsic_rank = 5;      ///< d, must satisfy d <= N
    double noise_variance = 0.1; ///< Gaussian variance added to each distance
    double query_fraction = 0.1; ///< fraction of the triplet universe to draw
    int test_size = 3000;        ///< held-out queries, labeled noiselessly
    std::uint64_t seed = 0;
};

/// N x d space of i.i.d. standard Gaussian entries.
/// The draw is repeated on the measure-zero event that the numerical rank
/// falls short of d.
PerceptualSpace generate_space(const GenConfig& cfg);

/// Number of distinct (anchor, unordered candidate pair) queries:
/// n * (n-1) * (n-2) / 2.
std::uint64_t triplet_universe_size(int n);

/// Draws floor(query_fraction * universe) training queries with replacement.
/// Each query picks a uniform anchor and unordered pair; both candidate
/// distances receive independent Gaussian noise and the triplet is oriented
/// by the noisy values. Test queries are drawn the same way from
/// combinations absent from the training draw (distinct among themselves)
/// and labeled by the true distances.
///
/// Throws TestPoolExhausted when fewer than test_size unseen combinations
/// remain.
std::pair<TripletSet, TripletSet> sample_triplets(const PerceptualSpace& space,
                                                  const GenConfig& cfg);

/// Best rank-d approximation in Frobenius norm (truncated SVD), returned at
/// the original shape.
Matrix truncate_rank(const Matrix& m, int d);

/// Builds a ground-truth space from an externally supplied item-embedding
/// matrix: rank-truncates it to d and re-expresses the rows in d coordinates
/// (U_d * Sigma_d), which preserves all pairwise row distances of the
/// truncated matrix.
PerceptualSpace space_from_matrix(const Matrix& m, int d);

}  // namespace lore
