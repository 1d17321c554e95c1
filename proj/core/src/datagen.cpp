#include <lore/datagen.hpp>

#include <Eigen/SVD>
#include <cmath>
#include <random>
#include <string>
#include <unordered_set>

#include "stream_seed.hpp"

namespace lore {

namespace {

void validate_gen_config(const GenConfig& cfg) {
    if (cfg.n_items < 3) throw ConfigError("n_items must be at least 3");
    if (cfg.intrinsic_rank <= 0) throw ConfigError("intrinsic_rank must be positive");
    if (cfg.intrinsic_rank > cfg.n_items)
        throw ConfigError("intrinsic_rank must not exceed n_items");
    if (cfg.noise_variance < 0.0)
        throw ConfigError("noise_variance must be nonnegative");
    if (!(cfg.query_fraction > 0.0 && cfg.query_fraction <= 1.0))
        throw ConfigError("query_fraction must be in (0, 1]");
    if (cfg.test_size <= 0) throw ConfigError("test_size must be positive");
}

int numerical_rank_of(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    const Vector& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma[0] <= 0.0) return 0;
    const double tol = static_cast<double>(std::max(m.rows(), m.cols())) *
                       std::numeric_limits<double>::epsilon() * sigma[0];
    int rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma[i] > tol) ++rank;
    }
    return rank;
}

// Uniform draw of an (anchor, unordered pair) query. The two candidates are
// drawn as an ordered pair of distinct non-anchor items, which makes the
// unordered pair uniform.
struct QueryDraw {
    int anchor;
    int first;
    int second;
};

QueryDraw draw_query(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick_anchor(0, n - 1);
    std::uniform_int_distribution<int> pick_v1(0, n - 2);
    std::uniform_int_distribution<int> pick_v2(0, n - 3);
    const int a = pick_anchor(rng);
    int v1 = pick_v1(rng);
    int v2 = pick_v2(rng);
    if (v2 >= v1) ++v2;
    const auto to_item = [a](int v) { return v >= a ? v + 1 : v; };
    return {a, to_item(v1), to_item(v2)};
}

std::uint64_t combo_key(int n, const QueryDraw& q) {
    const int lo = std::min(q.first, q.second);
    const int hi = std::max(q.first, q.second);
    return (static_cast<std::uint64_t>(q.anchor) * n + lo) * n + hi;
}

}  // namespace

PerceptualSpace generate_space(const GenConfig& cfg) {
    validate_gen_config(cfg);
    std::mt19937_64 rng(detail::mix_seed(cfg.seed, detail::kSpaceStream));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(cfg.n_items, cfg.intrinsic_rank);
    do {
        for (int r = 0; r < cfg.n_items; ++r) {
            for (int c = 0; c < cfg.intrinsic_rank; ++c) {
                m(r, c) = gauss(rng);
            }
        }
    } while (numerical_rank_of(m) != cfg.intrinsic_rank);
    return PerceptualSpace{std::move(m), cfg.intrinsic_rank};
}

std::uint64_t triplet_universe_size(int n) {
    if (n < 3) throw ConfigError("triplet_universe_size: n must be at least 3");
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    return un * (un - 1) * (un - 2) / 2;
}

std::pair<TripletSet, TripletSet> sample_triplets(const PerceptualSpace& space,
                                                  const GenConfig& cfg) {
    validate_gen_config(cfg);
    const int n = space.n_items();
    if (n != cfg.n_items)
        throw ConfigError("sample_triplets: space size does not match config");

    const std::uint64_t universe = triplet_universe_size(n);
    const auto n_train =
        static_cast<std::uint64_t>(cfg.query_fraction * static_cast<double>(universe));

    std::mt19937_64 rng(detail::mix_seed(cfg.seed, detail::kTripletStream));
    std::normal_distribution<double> noise(0.0, std::sqrt(cfg.noise_variance > 0.0
                                                              ? cfg.noise_variance
                                                              : 1.0));
    const bool noisy = cfg.noise_variance > 0.0;
    const Matrix& p = space.matrix;
    const auto distance = [&p](int a, int b) {
        return (p.row(a) - p.row(b)).norm();
    };

    TripletSet train{{}, n};
    train.triplets.reserve(n_train);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(n_train * 2);
    for (std::uint64_t q = 0; q < n_train; ++q) {
        const QueryDraw draw = draw_query(n, rng);
        double d_first = distance(draw.anchor, draw.first);
        double d_second = distance(draw.anchor, draw.second);
        if (noisy) {
            d_first += noise(rng);
            d_second += noise(rng);
        }
        if (d_first <= d_second) {
            train.triplets.push_back({draw.anchor, draw.first, draw.second});
        } else {
            train.triplets.push_back({draw.anchor, draw.second, draw.first});
        }
        seen.insert(combo_key(n, draw));
    }

    const std::uint64_t unseen = universe - seen.size();
    if (unseen < static_cast<std::uint64_t>(cfg.test_size)) {
        throw TestPoolExhausted(
            "sample_triplets: only " + std::to_string(unseen) +
            " unseen query combinations remain, need " +
            std::to_string(cfg.test_size));
    }

    // Held-out queries: distinct combinations never drawn for training,
    // labeled by the true distances.
    TripletSet test{{}, n};
    test.triplets.reserve(cfg.test_size);
    std::unordered_set<std::uint64_t> test_seen;
    test_seen.reserve(cfg.test_size * 2);
    while (test.triplets.size() < static_cast<std::size_t>(cfg.test_size)) {
        const QueryDraw draw = draw_query(n, rng);
        const std::uint64_t key = combo_key(n, draw);
        if (seen.count(key) || test_seen.count(key)) continue;
        test_seen.insert(key);
        if (distance(draw.anchor, draw.first) <= distance(draw.anchor, draw.second)) {
            test.triplets.push_back({draw.anchor, draw.first, draw.second});
        } else {
            test.triplets.push_back({draw.anchor, draw.second, draw.first});
        }
    }
    return {std::move(train), std::move(test)};
}

Matrix truncate_rank(const Matrix& m, int d) {
    if (d < 1 || d > std::min(m.rows(), m.cols())) {
        throw ConfigError("truncate_rank: d must be in [1, min(rows, cols)]");
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU().leftCols(d) *
           svd.singularValues().head(d).asDiagonal() *
           svd.matrixV().leftCols(d).transpose();
}

PerceptualSpace space_from_matrix(const Matrix& m, int d) {
    if (d < 1 || d > std::min(m.rows(), m.cols())) {
        throw ConfigError("space_from_matrix: d must be in [1, min(rows, cols)]");
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues()[d - 1] <= 0.0) {
        throw ConfigError("space_from_matrix: matrix rank is below requested " +
                          std::to_string(d));
    }
    Matrix coords =
        svd.matrixU().leftCols(d) * svd.singularValues().head(d).asDiagonal();
    return PerceptualSpace{std::move(coords), d};
}

}  // namespace lore
