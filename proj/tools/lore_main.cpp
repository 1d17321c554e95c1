/// @file  lore_main.cpp
/// @brief Command-line front end: synth, fit, eval, sweep, axes.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <lore/baselines.hpp>
#include <lore/datagen.hpp>
#include <lore/io.hpp>
#include <lore/metrics.hpp>
#include <lore/runner.hpp>
#include <lore/solver.hpp>

namespace fs = std::filesystem;
using lore::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitSolver = 3;

void add_solver_flags(CLI::App* cmd, lore::SolverConfig& solver,
                      bool with_seed = true) {
    cmd->add_option("--lambda", solver.lambda, "Regularization weight");
    cmd->add_option("--p", solver.p, "Schatten exponent in (0, 1]");
    cmd->add_option("--mu", solver.mu, "Inverse step size");
    cmd->add_option("--tol", solver.tol, "Stopping tolerance");
    cmd->add_option("--max-iters", solver.max_iters, "Iteration cap");
    cmd->add_option("--init-variance", solver.init_variance,
                    "Variance of the Gaussian initialization");
    if (with_seed) cmd->add_option("--seed", solver.seed, "PRNG seed");
}

void add_gen_flags(CLI::App* cmd, lore::GenConfig& gen, bool with_seed = true) {
    cmd->add_option("--n-items", gen.n_items, "Number of items N");
    cmd->add_option("--intrinsic-rank", gen.intrinsic_rank, "True rank d");
    cmd->add_option("--noise-variance", gen.noise_variance,
                    "Gaussian noise variance per distance");
    cmd->add_option("--query-fraction", gen.query_fraction,
                    "Fraction of the triplet universe to draw");
    cmd->add_option("--test-size", gen.test_size, "Held-out query count");
    if (with_seed) cmd->add_option("--seed", gen.seed, "PRNG seed");
}

int run_synth(const lore::GenConfig& gen, const fs::path& out_dir,
              const std::string& matrix_path) {
    fs::create_directories(out_dir);
    lore::PerceptualSpace space =
        matrix_path.empty()
            ? lore::generate_space(gen)
            : lore::space_from_matrix(lore::load_matrix_csv(matrix_path),
                                      gen.intrinsic_rank);
    lore::GenConfig effective = gen;
    effective.n_items = space.n_items();
    auto [train, test] = lore::sample_triplets(space, effective);
    lore::save_matrix_csv(space.matrix, out_dir / "space.csv");
    lore::save_triplets_csv(train, out_dir / "train.csv");
    lore::save_triplets_csv(test, out_dir / "test.csv");
    json meta{{"gen", effective},
              {"n_train", train.size()},
              {"n_test", test.size()},
              {"universe", lore::triplet_universe_size(effective.n_items)}};
    std::ofstream meta_out(out_dir / "gen.json");
    meta_out << meta.dump(2) << '\n';
    std::cout << "wrote " << out_dir.string() << "/{space,train,test}.csv ("
              << train.size() << " train, " << test.size() << " test)\n";
    return kExitOk;
}

int run_fit(const fs::path& triplets_path, int n_items, int ambient_dim,
            const std::string& method, const lore::SolverConfig& solver,
            const fs::path& output, const std::string& summary_path) {
    const lore::TripletSet train = lore::load_triplets_csv(triplets_path, n_items);
    lore::FitResult fit;
    if (method == "lore") {
        fit = lore::fit_lore(train, train.n_items, ambient_dim, solver);
    } else if (method == "unregularized") {
        fit = lore::fit_unregularized(train, train.n_items, ambient_dim, solver);
    } else {
        throw lore::ConfigError("fit: method must be lore or unregularized");
    }
    lore::save_embedding_csv(fit.embedding, output);
    if (!summary_path.empty()) {
        json summary = lore::fit_summary_json(fit);
        summary["final_objective"] = fit.objective_trace.back();
        std::ofstream out(summary_path);
        out << summary.dump(2) << '\n';
    }
    std::cout << "fit: " << fit.iterations_run << " iterations, "
              << (fit.converged ? "converged" : "hit iteration cap")
              << ", wrote " << output.string() << "\n";
    return kExitOk;
}

int run_eval(const fs::path& embedding_path, const fs::path& triplets_path,
             const std::string& space_path, double eta) {
    const lore::Embedding z = lore::load_embedding_csv(embedding_path);
    const lore::TripletSet test = lore::load_triplets_csv(triplets_path, z.n_items());
    lore::MetricsReport report;
    report.test_accuracy = lore::triplet_accuracy(z, test);
    report.measured_rank = lore::measured_rank(z);
    if (!space_path.empty()) {
        const lore::Matrix p = lore::load_matrix_csv(space_path);
        lore::PerceptualSpace space{p, static_cast<int>(p.cols())};
        report.npd = lore::normalized_procrustes_distance(space, z, eta);
        report.psnr_db = lore::psnr(space, z, eta);
    }
    std::cout << json(report).dump(2) << '\n';
    return kExitOk;
}

int run_axes(const fs::path& embedding_path, int k) {
    const lore::Embedding z = lore::load_embedding_csv(embedding_path);
    const auto axes = lore::principal_axes(z, k);
    json out = json::array();
    for (const auto& axis : axes) {
        out.push_back(json{{"component_index", axis.component_index},
                           {"item_order", axis.item_order},
                           {"projections", axis.projections}});
    }
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

int run_sweep(const lore::ExperimentConfig& cfg) {
    const lore::ReportRecord report = lore::run_experiment(cfg);
    for (const auto& row : report.aggregates) {
        std::printf(
            "lambda %-12g accuracy %.4f +/- %.4f   rank %.2f +/- %.2f   "
            "time %.2fs +/- %.2fs  (%d runs)\n",
            row.lambda, row.accuracy_mean, row.accuracy_std, row.rank_mean,
            row.rank_std, row.wall_time_mean, row.wall_time_std, row.count);
    }
    std::cout << "report written to " << cfg.output_dir.string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LORE: low-rank ordinal embeddings from triplet comparisons"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand(
        "synth", "Generate a synthetic space and train/test triplet files");
    lore::GenConfig synth_gen;
    std::string synth_matrix;
    std::string synth_out = "synth_out";
    add_gen_flags(synth, synth_gen);
    synth->add_option("--matrix", synth_matrix,
                      "External item-embedding matrix CSV to rank-truncate "
                      "instead of a Gaussian space");
    synth->add_option("--output-dir,-o", synth_out, "Output directory");

    // fit
    auto* fit = app.add_subcommand("fit", "Fit one embedding from a triplet CSV");
    std::string fit_triplets;
    int fit_n_items = 0;
    int fit_ambient = 15;
    std::string fit_method = "lore";
    std::string fit_output = "embedding.csv";
    std::string fit_summary;
    lore::SolverConfig fit_solver;
    fit->add_option("--triplets", fit_triplets, "Training triplet CSV")->required();
    fit->add_option("--n-items", fit_n_items, "Item count (0 = infer)");
    fit->add_option("--ambient-dim", fit_ambient, "Embedding dimension d'");
    fit->add_option("--method", fit_method, "lore or unregularized");
    fit->add_option("--output,-o", fit_output, "Embedding CSV to write");
    fit->add_option("--summary", fit_summary, "Optional fit-diagnostics JSON");
    add_solver_flags(fit, fit_solver);

    // eval
    auto* eval = app.add_subcommand(
        "eval", "Evaluate an embedding against triplets and optional ground truth");
    std::string eval_embedding, eval_triplets, eval_space;
    double eval_eta = 1e-3;
    eval->add_option("--embedding", eval_embedding, "Embedding CSV")->required();
    eval->add_option("--triplets", eval_triplets, "Test triplet CSV")->required();
    eval->add_option("--space", eval_space, "Ground-truth space CSV");
    eval->add_option("--eta", eval_eta, "Alignment ridge parameter");

    // sweep
    auto* sweep = app.add_subcommand(
        "sweep", "Run a seed/lambda grid and write per-run and aggregate reports");
    std::string sweep_config;
    lore::GenConfig sweep_gen;
    lore::SolverConfig sweep_solver;
    int sweep_ambient = 15;
    std::string sweep_method;
    std::vector<std::uint64_t> sweep_seeds;
    std::vector<double> sweep_lambdas;
    std::vector<int> sweep_dims;
    int sweep_folds = 5;
    std::string sweep_out;
    std::string sweep_train, sweep_test, sweep_matrix;
    int sweep_jobs = 0;
    sweep->add_option("--config", sweep_config, "Experiment config JSON");
    add_gen_flags(sweep, sweep_gen, /*with_seed=*/false);
    add_solver_flags(sweep, sweep_solver, /*with_seed=*/false);
    sweep->add_option("--ambient-dim", sweep_ambient, "Embedding dimension d'");
    sweep->add_option("--method", sweep_method, "lore, unregularized or dim_sweep");
    sweep->add_option("--seeds", sweep_seeds, "Seed list (one run per seed)");
    sweep->add_option("--lambda-grid", sweep_lambdas, "Lambda grid (lore only)");
    sweep->add_option("--output-dir,-o", sweep_out, "Report directory");
    sweep->add_option("--train", sweep_train, "External train triplet CSV");
    sweep->add_option("--test", sweep_test, "External test triplet CSV");
    sweep->add_option("--matrix", sweep_matrix, "External matrix CSV to truncate");
    sweep->add_option("--jobs", sweep_jobs, "Worker threads (0 = hardware)");
    sweep->add_option("--candidate-dims", sweep_dims,
                      "Candidate dimensions (dim_sweep)");
    sweep->add_option("--folds", sweep_folds, "CV folds (dim_sweep)");

    // axes
    auto* axes = app.add_subcommand(
        "axes", "Print principal-axis item orderings for an embedding");
    std::string axes_embedding;
    int axes_k = 3;
    axes->add_option("--embedding", axes_embedding, "Embedding CSV")->required();
    axes->add_option("--k", axes_k, "Number of components");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (synth->parsed()) {
            return run_synth(synth_gen, synth_out, synth_matrix);
        }
        if (fit->parsed()) {
            return run_fit(fit_triplets, fit_n_items, fit_ambient, fit_method,
                           fit_solver, fit_output, fit_summary);
        }
        if (eval->parsed()) {
            return run_eval(eval_embedding, eval_triplets, eval_space, eval_eta);
        }
        if (axes->parsed()) {
            return run_axes(axes_embedding, axes_k);
        }
        if (sweep->parsed()) {
            lore::ExperimentConfig cfg;
            if (!sweep_config.empty()) {
                std::ifstream in(sweep_config);
                if (!in) throw lore::IoError("cannot open config " + sweep_config);
                json j;
                try {
                    in >> j;
                } catch (const json::parse_error& e) {
                    throw lore::ConfigError("config parse error: " +
                                            std::string(e.what()));
                }
                cfg = lore::experiment_config_from_json(j);
            }
            // flags override the config file field by field
            if (sweep->count("--n-items")) cfg.data.gen.n_items = sweep_gen.n_items;
            if (sweep->count("--intrinsic-rank"))
                cfg.data.gen.intrinsic_rank = sweep_gen.intrinsic_rank;
            if (sweep->count("--noise-variance"))
                cfg.data.gen.noise_variance = sweep_gen.noise_variance;
            if (sweep->count("--query-fraction"))
                cfg.data.gen.query_fraction = sweep_gen.query_fraction;
            if (sweep->count("--test-size"))
                cfg.data.gen.test_size = sweep_gen.test_size;
            if (sweep->count("--lambda")) cfg.solver.lambda = sweep_solver.lambda;
            if (sweep->count("--p")) cfg.solver.p = sweep_solver.p;
            if (sweep->count("--mu")) cfg.solver.mu = sweep_solver.mu;
            if (sweep->count("--tol")) cfg.solver.tol = sweep_solver.tol;
            if (sweep->count("--max-iters"))
                cfg.solver.max_iters = sweep_solver.max_iters;
            if (sweep->count("--init-variance"))
                cfg.solver.init_variance = sweep_solver.init_variance;
            if (sweep->count("--ambient-dim")) cfg.ambient_dim = sweep_ambient;
            if (!sweep_method.empty()) cfg.method = lore::method_from_name(sweep_method);
            if (!sweep_seeds.empty()) cfg.seeds = sweep_seeds;
            if (!sweep_lambdas.empty()) cfg.lambda_grid = sweep_lambdas;
            if (!sweep_out.empty()) cfg.output_dir = sweep_out;
            if (sweep_jobs > 0) cfg.jobs = sweep_jobs;
            if (!sweep_dims.empty()) cfg.candidate_dims = sweep_dims;
            if (sweep->count("--folds")) cfg.folds = sweep_folds;
            if (!sweep_train.empty()) {
                cfg.data.kind = lore::DataSpec::Kind::TripletFiles;
                cfg.data.train_path = sweep_train;
                cfg.data.test_path = sweep_test;
                cfg.data.n_items =
                    sweep->count("--n-items") ? sweep_gen.n_items : 0;
            } else if (!sweep_matrix.empty()) {
                cfg.data.kind = lore::DataSpec::Kind::MatrixFile;
                cfg.data.matrix_path = sweep_matrix;
            }
            return run_sweep(cfg);
        }
        return kExitConfig;
    } catch (const lore::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const lore::SvdFailure& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const lore::NonFiniteObjective& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const lore::Error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
}
