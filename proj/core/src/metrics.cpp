#include <lore/metrics.hpp>

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lore {

namespace {

Matrix centered(const Matrix& m) {
    return m.rowwise() - m.colwise().mean();
}

}  // namespace

double triplet_accuracy(const Embedding& z, const TripletSet& ts) {
    if (ts.empty()) {
        throw EmptyTestSet("triplet_accuracy: empty triplet set");
    }
    validate_triplet_set(ts, z.n_items());
    const Matrix& m = z.matrix;
    std::size_t satisfied = 0;
    for (const Triplet& t : ts.triplets) {
        const double d_near = (m.row(t.anchor) - m.row(t.near)).norm();
        const double d_far = (m.row(t.anchor) - m.row(t.far)).norm();
        if (d_near < d_far) ++satisfied;
    }
    return static_cast<double>(satisfied) / static_cast<double>(ts.size());
}

int measured_rank(const Embedding& z) {
    if (z.matrix.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(z.matrix);
    const Vector& sigma = svd.singularValues();
    if (sigma[0] <= 0.0) return 0;
    const double tol =
        static_cast<double>(std::max(z.matrix.rows(), z.matrix.cols())) *
        std::numeric_limits<double>::epsilon() * sigma[0];
    int rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma[i] > tol) ++rank;
    }
    return rank;
}

AlignmentResult align_subspace(const PerceptualSpace& space, const Embedding& z,
                               double eta) {
    if (space.n_items() != z.n_items()) {
        throw ConfigError("align_subspace: row counts differ");
    }
    if (eta <= 0.0) throw ConfigError("align_subspace: eta must be positive");

    const Matrix p_c = centered(space.matrix);
    const Matrix z_c = centered(z.matrix);
    const Eigen::RowVectorXd p_mean = space.matrix.colwise().mean();

    Matrix gram = z_c.transpose() * z_c;
    gram.diagonal().array() += eta;
    const Matrix projection = gram.ldlt().solve(z_c.transpose() * p_c);

    AlignmentResult result;
    result.aligned = (z_c * projection).rowwise() + p_mean;
    result.projection = projection;
    result.eta = eta;
    return result;
}

double normalized_procrustes_distance(const PerceptualSpace& space,
                                      const Embedding& z, double eta) {
    const double z_c_norm = centered(z.matrix).norm();
    if (z_c_norm <= 1e-12) {
        throw DegenerateEmbedding(
            "normalized_procrustes_distance: centered embedding is zero");
    }
    const AlignmentResult alignment = align_subspace(space, z, eta);
    return (space.matrix - alignment.aligned).norm() / z_c_norm;
}

double psnr(const PerceptualSpace& space, const Embedding& z, double eta) {
    const AlignmentResult alignment = align_subspace(space, z, eta);
    const double err = (alignment.aligned - space.matrix).norm();
    if (err <= 1e-15) {
        return std::numeric_limits<double>::infinity();
    }
    const double peak = alignment.aligned.maxCoeff();
    if (peak <= 0.0) {
        throw NonPositivePeak("psnr: aligned matrix has no positive entry");
    }
    return 20.0 * std::log10(peak / err);
}

std::vector<AxisOrdering> principal_axes(const Embedding& z, int k) {
    if (k < 1 || k > z.ambient_dim()) {
        throw ConfigError("principal_axes: k must be in [1, ambient_dim]");
    }
    const Matrix z_c = centered(z.matrix);
    Eigen::JacobiSVD<Matrix> svd(z_c, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Matrix& v = svd.matrixV();
    const int n = z.n_items();

    std::vector<AxisOrdering> axes;
    axes.reserve(k);
    for (int c = 0; c < k; ++c) {
        Vector axis = v.col(c);
        // sign convention: the largest-magnitude loading is positive
        Eigen::Index peak = 0;
        axis.cwiseAbs().maxCoeff(&peak);
        if (axis[peak] < 0.0) axis = -axis;

        AxisOrdering ordering;
        ordering.component_index = c;
        const Vector proj = z_c * axis;
        ordering.projections.assign(proj.data(), proj.data() + proj.size());
        ordering.item_order.resize(n);
        std::iota(ordering.item_order.begin(), ordering.item_order.end(), 0);
        std::sort(ordering.item_order.begin(), ordering.item_order.end(),
                  [&proj](int a, int b) {
                      if (proj[a] != proj[b]) return proj[a] < proj[b];
                      return a < b;
                  });
        axes.push_back(std::move(ordering));
    }
    return axes;
}

}  // namespace lore
