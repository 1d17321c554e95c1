/// @file  test_utils.hpp
/// @brief Shared generators and independent oracles for the test suites.
///
/// Everything here is deliberately implemented without going through the
/// library's own code paths (second SVD route, brute-force counts, finite
/// differences) so it can serve as an independent check.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <lore/types.hpp>

namespace testutil {

using lore::Matrix;
using lore::Vector;

inline Matrix random_matrix(int rows, int cols, std::mt19937_64& rng,
                            double stddev = 1.0) {
    std::normal_distribution<double> gauss(0.0, stddev);
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = gauss(rng);
    return m;
}

/// Haar-ish random orthogonal matrix via QR of a Gaussian matrix.
inline Matrix random_orthogonal(int n, std::mt19937_64& rng) {
    const Matrix g = random_matrix(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    // fix signs so the distribution is not biased by the QR convention
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < n; ++c) {
        if (r(c, c) < 0) q.col(c) = -q.col(c);
    }
    return q;
}

inline lore::TripletSet random_triplets(int n_items, int count,
                                        std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, n_items - 1);
    lore::TripletSet ts{{}, n_items};
    while (static_cast<int>(ts.triplets.size()) < count) {
        const int a = pick(rng), i = pick(rng), j = pick(rng);
        if (a == i || a == j || i == j) continue;
        ts.triplets.push_back({a, i, j});
    }
    return ts;
}

/// Central finite differences of a scalar function of the embedding matrix.
template <typename F>
Matrix finite_difference_gradient(const Matrix& z, F&& f, double step = 1e-6) {
    Matrix grad(z.rows(), z.cols());
    Matrix probe = z;
    for (int r = 0; r < z.rows(); ++r) {
        for (int c = 0; c < z.cols(); ++c) {
            probe(r, c) = z(r, c) + step;
            const double hi = f(probe);
            probe(r, c) = z(r, c) - step;
            const double lo = f(probe);
            probe(r, c) = z(r, c);
            grad(r, c) = (hi - lo) / (2.0 * step);
        }
    }
    return grad;
}

/// Brute-force triplet accuracy (independent re-count).
inline double brute_force_accuracy(const Matrix& z,
                                   const std::vector<lore::Triplet>& ts) {
    std::size_t good = 0;
    for (const auto& t : ts) {
        double d_near = 0.0, d_far = 0.0;
        for (int c = 0; c < z.cols(); ++c) {
            const double a = z(t.anchor, c) - z(t.near, c);
            const double b = z(t.anchor, c) - z(t.far, c);
            d_near += a * a;
            d_far += b * b;
        }
        if (std::sqrt(d_near) < std::sqrt(d_far)) ++good;
    }
    return static_cast<double>(good) / static_cast<double>(ts.size());
}

/// Independent subspace alignment following the centering + ridge formulas
/// directly, with a fully pivoted LU inverse instead of the library's
/// Cholesky solve.
struct BruteAlignment {
    Matrix aligned;
    double npd;
    double psnr_db;
};

inline BruteAlignment brute_force_alignment(const Matrix& p, const Matrix& z,
                                            double eta) {
    const Eigen::RowVectorXd mu_p = p.colwise().mean();
    const Eigen::RowVectorXd mu_z = z.colwise().mean();
    const Matrix p_c = p.rowwise() - mu_p;
    const Matrix z_c = z.rowwise() - mu_z;
    Matrix gram = z_c.transpose() * z_c;
    gram += eta * Matrix::Identity(gram.rows(), gram.cols());
    const Matrix a = gram.fullPivLu().inverse() * z_c.transpose() * p_c;
    BruteAlignment out;
    out.aligned = (z_c * a).rowwise() + mu_p;
    out.npd = (p - out.aligned).norm() / z_c.norm();
    out.psnr_db =
        20.0 * std::log10(out.aligned.maxCoeff() / (out.aligned - p).norm());
    return out;
}

/// Independent reconstruction of a thresholding step via the eigen
/// decomposition of G^T G (no shared code with the library's SVD path):
/// G = U S V^T implies U_i = G v_i / S_i, so U diag(s) V^T = G V diag(s/S) V^T.
inline Matrix eig_route_svt(const Matrix& g, const Vector& sigma_prev,
                            double lambda, double p, double mu) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(g.transpose() * g);
    const int k = static_cast<int>(g.cols());
    // eigenvalues ascending -> singular values descending
    Vector s(k);
    Matrix v(k, k);
    for (int i = 0; i < k; ++i) {
        s[i] = std::sqrt(std::max(eig.eigenvalues()[k - 1 - i], 0.0));
        v.col(i) = eig.eigenvectors().col(k - 1 - i);
    }
    Vector scale = Vector::Zero(k);
    for (int i = 0; i < k; ++i) {
        double w;
        if (lambda == 0.0) {
            w = 0.0;
        } else if (sigma_prev[i] <= 1e-12) {
            w = std::numeric_limits<double>::infinity();
        } else {
            w = (lambda * p / mu) * std::pow(sigma_prev[i], p - 1.0);
        }
        const double kept = s[i] - w;
        if (kept > 0.0 && s[i] > 1e-300) scale[i] = kept / s[i];
    }
    return g * v * scale.asDiagonal() * v.transpose();
}

}  // namespace testutil
