#include <lore/solver.hpp>

#include <Eigen/SVD>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include <lore/objective.hpp>

namespace lore {

namespace {

constexpr double kSigmaFloor = 1e-12;  // below this a direction counts as dead

void validate_solver_config(const SolverConfig& cfg) {
    if (cfg.lambda < 0.0) throw ConfigError("lambda must be nonnegative");
    if (!(cfg.p > 0.0 && cfg.p <= 1.0)) throw ConfigError("p must be in (0, 1]");
    if (cfg.mu <= 0.0) throw ConfigError("mu must be positive");
    if (cfg.tol <= 0.0) throw ConfigError("tol must be positive");
    if (cfg.max_iters <= 0) throw ConfigError("max_iters must be positive");
    if (cfg.init_variance <= 0.0)
        throw ConfigError("init_variance must be positive");
}

Vector singular_values(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues();
}

double schatten_sum(const Vector& sigma, double p) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        sum += std::pow(sigma[i], p);
    }
    return sum;
}

}  // namespace

Embedding init_embedding(int n, int ambient_dim, const SolverConfig& cfg) {
    if (n <= 0 || ambient_dim <= 0) {
        throw ConfigError("init_embedding: dimensions must be positive");
    }
    validate_solver_config(cfg);
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(cfg.init_variance));
    Matrix z(n, ambient_dim);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < ambient_dim; ++c) {
            z(r, c) = gauss(rng);
        }
    }
    return Embedding{std::move(z)};
}

std::pair<Embedding, SvtStepRecord> svt_step(const Embedding& z,
                                             const Matrix& grad,
                                             const Vector& sigma_prev,
                                             const SolverConfig& cfg) {
    const Matrix stepped = z.matrix - (1.0 / cfg.mu) * grad;
    Eigen::JacobiSVD<Matrix> svd(stepped,
                                 Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) {
        throw SvdFailure("svt_step: SVD did not converge");
    }
    const Vector& s = svd.singularValues();

    SvtStepRecord rec;
    rec.shifted_singulars.assign(s.data(), s.data() + s.size());
    rec.weights.resize(s.size());
    Vector kept = Vector::Zero(s.size());
    const double inf = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        double w;
        if (cfg.lambda == 0.0) {
            w = 0.0;
        } else if (sigma_prev[i] <= kSigmaFloor) {
            // sigma^(p-1) diverges at 0: the direction stays dead
            w = inf;
        } else {
            w = (cfg.lambda * cfg.p / cfg.mu) * std::pow(sigma_prev[i], cfg.p - 1.0);
        }
        rec.weights[i] = w;
        const double thresholded = s[i] - w;
        if (thresholded > 0.0) {
            kept[i] = thresholded;
            ++rec.kept_count;
        }
    }

    Matrix next = svd.matrixU() * kept.asDiagonal() * svd.matrixV().transpose();
    return {Embedding{std::move(next)}, std::move(rec)};
}

FitResult fit_lore(const TripletSet& ts, int n_items, int ambient_dim,
                   const SolverConfig& cfg) {
    validate_solver_config(cfg);
    if (n_items <= 0 || ambient_dim <= 0) {
        throw ConfigError("fit_lore: dimensions must be positive");
    }
    validate_triplet_set(ts, n_items);

    const auto start = std::chrono::steady_clock::now();

    FitResult result;
    Matrix z = init_embedding(n_items, ambient_dim, cfg).matrix;
    double prev_objective = std::numeric_limits<double>::infinity();

    // The loop optimizes the triplet-mean loss. mu is calibrated against the
    // mean-loss gradient (its Lipschitz constant is ~0.013 at default sizes);
    // the summed gradient grows with |T| and would overshoot at step 1/mu.
    const double loss_scale =
        ts.empty() ? 1.0 : 1.0 / static_cast<double>(ts.size());

    while (true) {
        // loss first: a diverged iterate must surface as NonFiniteObjective
        // before the SVD sees it
        const double loss = loss_scale * smoothed_loss(Embedding{z}, ts);
        if (!std::isfinite(loss)) {
            throw NonFiniteObjective(
                "fit_lore: loss is not finite at iteration " +
                std::to_string(result.iterations_run));
        }
        const Vector sigma = singular_values(z);
        const double objective = loss + cfg.lambda * schatten_sum(sigma, cfg.p);
        result.objective_trace.push_back(objective);
        if (!std::isfinite(objective)) {
            throw NonFiniteObjective(
                "fit_lore: objective is not finite at iteration " +
                std::to_string(result.iterations_run));
        }
        if (std::abs(objective - prev_objective) < cfg.tol) {
            result.converged = true;
            break;
        }
        if (result.iterations_run == cfg.max_iters) {
            break;
        }

        const Matrix grad =
            loss_scale * smoothed_loss_gradient(Embedding{z}, ts);
        auto [next, rec] = svt_step(Embedding{z}, grad, sigma, cfg);
        const Matrix delta = next.matrix - z;
        result.iterate_delta_trace.push_back(delta.norm());
        z = std::move(next.matrix);
        prev_objective = objective;
        ++result.iterations_run;

        if (delta.cwiseAbs().maxCoeff() < cfg.tol) {
            result.converged = true;
            break;
        }
    }

    result.embedding = Embedding{std::move(z)};
    result.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

}  // namespace lore
