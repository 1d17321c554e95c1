#include <lore/objective.hpp>

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace lore {

double softplus(double x) {
    if (x > 30.0) return x;
    return std::log1p(std::exp(x));
}

double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double triplet_margin(const Embedding& z, const Triplet& t) {
    const Matrix& m = z.matrix;
    const double d_near = (m.row(t.anchor) - m.row(t.near)).norm();
    const double d_far = (m.row(t.anchor) - m.row(t.far)).norm();
    return 1.0 + d_near - d_far;
}

double smoothed_loss(const Embedding& z, const TripletSet& ts) {
    validate_triplet_set(ts, z.n_items());
    double sum = 0.0;
    for (const Triplet& t : ts.triplets) {
        sum += softplus(triplet_margin(z, t));
    }
    return sum;
}

Matrix smoothed_loss_gradient(const Embedding& z, const TripletSet& ts,
                              double eps) {
    validate_triplet_set(ts, z.n_items());
    const Matrix& m = z.matrix;
    Matrix grad = Matrix::Zero(m.rows(), m.cols());
    Eigen::RowVectorXd diff_near(m.cols()), diff_far(m.cols());
    for (const Triplet& t : ts.triplets) {
        diff_near = m.row(t.anchor) - m.row(t.near);
        diff_far = m.row(t.anchor) - m.row(t.far);
        const double d_near = diff_near.norm();
        const double d_far = diff_far.norm();
        const double s = sigmoid(1.0 + d_near - d_far);
        // unit directions, guarded where the embedding collapses
        diff_near /= std::max(d_near, eps);
        diff_far /= std::max(d_far, eps);
        grad.row(t.anchor) += s * (diff_near - diff_far);
        grad.row(t.near) -= s * diff_near;
        grad.row(t.far) += s * diff_far;
    }
    return grad;
}

double schatten_quasi_norm(const Embedding& z, double p) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::invalid_argument("schatten_quasi_norm: p must be in (0, 1]");
    }
    Eigen::JacobiSVD<Matrix> svd(z.matrix);
    const Vector& sigma = svd.singularValues();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        sum += std::pow(sigma[i], p);
    }
    return sum;
}

ObjectiveValue evaluate_objective(const Embedding& z, const TripletSet& ts,
                                  const SolverConfig& cfg) {
    ObjectiveValue v;
    v.loss = smoothed_loss(z, ts);
    v.regularizer = schatten_quasi_norm(z, cfg.p);
    v.lambda = cfg.lambda;
    v.total = v.loss + cfg.lambda * v.regularizer;
    return v;
}

}  // namespace lore
