/// @file  runner.hpp
/// @brief Experiment pipeline: generate or load data, fit, evaluate, report.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <lore/io.hpp>
#include <lore/types.hpp>

namespace lore {

/// Where the triplets (and, when available, the ground truth) come from.
struct DataSpec {
    enum class Kind {
        Synthetic,     ///< Gaussian space from GenConfig
        MatrixFile,    ///< external item-embedding matrix, rank-truncated
        TripletFiles,  ///< precollected train/test triplet CSVs
    };
    Kind kind = Kind::Synthetic;
    GenConfig gen;  ///< synthetic parameters; also drives the noisy query
                    ///< simulation on top of an external matrix
    std::filesystem::path matrix_path;
    std::filesystem::path train_path;
    std::filesystem::path test_path;
    int n_items = 0;  ///< for TripletFiles; 0 infers from the files
};

enum class Method { Lore, Unregularized, DimSweep };

/// Full description of one experiment.
struct ExperimentConfig {
    DataSpec data;
    SolverConfig solver;
    int ambient_dim = 15;
    Method method = Method::Lore;
    std::vector<std::uint64_t> seeds;
    std::optional<std::vector<double>> lambda_grid;  ///< lore only
    std::filesystem::path output_dir;
    int jobs = 1;  ///< worker threads; output is identical at any level
    std::vector<int> candidate_dims = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    int folds = 5;
};

/// One (seed, lambda) run.
struct RunRecord {
    std::uint64_t seed = 0;
    double lambda = 0.0;
    MetricsReport metrics;
    int iterations_run = 0;
    bool converged = false;
    std::optional<int> selected_dim;  ///< dim_sweep only
    json detail;                      ///< full per-run JSON as written to disk
};

/// Per-lambda aggregate row (mean and sample standard deviation over seeds).
struct AggregateRow {
    double lambda = 0.0;
    int count = 0;
    double accuracy_mean = 0.0, accuracy_std = 0.0;
    double rank_mean = 0.0, rank_std = 0.0;
    double wall_time_mean = 0.0, wall_time_std = 0.0;
};

/// The aggregate report: config echo, per-run records, per-lambda rows.
struct ReportRecord {
    json config_echo;
    std::vector<RunRecord> runs;
    std::vector<AggregateRow> aggregates;
};

std::string method_name(Method method);
Method method_from_name(const std::string& name);

json experiment_config_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(const json& j);

/// Runs every (seed, lambda) combination, writes one JSON per run under
/// output_dir/runs/, an aggregate report.json and a flat report.csv, and
/// returns the in-memory report. Independent runs execute on a worker pool;
/// outputs are identical to sequential execution.
ReportRecord run_experiment(const ExperimentConfig& cfg);

}  // namespace lore
