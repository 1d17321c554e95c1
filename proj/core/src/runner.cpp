#include <lore/runner.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <thread>

#include <lore/baselines.hpp>
#include <lore/metrics.hpp>
#include <lore/solver.hpp>

namespace lore {

namespace {

struct Dataset {
    TripletSet train;
    TripletSet test;
    std::optional<PerceptualSpace> space;  // simulation only
};

Dataset make_dataset(const ExperimentConfig& cfg, std::uint64_t seed) {
    Dataset data;
    switch (cfg.data.kind) {
        case DataSpec::Kind::Synthetic: {
            GenConfig gen = cfg.data.gen;
            gen.seed = seed;
            PerceptualSpace space = generate_space(gen);
            std::tie(data.train, data.test) = sample_triplets(space, gen);
            data.space = std::move(space);
            break;
        }
        case DataSpec::Kind::MatrixFile: {
            GenConfig gen = cfg.data.gen;
            gen.seed = seed;
            const Matrix m = load_matrix_csv(cfg.data.matrix_path);
            PerceptualSpace space = space_from_matrix(m, gen.intrinsic_rank);
            gen.n_items = space.n_items();
            std::tie(data.train, data.test) = sample_triplets(space, gen);
            data.space = std::move(space);
            break;
        }
        case DataSpec::Kind::TripletFiles: {
            data.train = load_triplets_csv(cfg.data.train_path, cfg.data.n_items);
            data.test = load_triplets_csv(cfg.data.test_path, data.train.n_items);
            break;
        }
    }
    return data;
}

std::string format_compact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void validate_experiment(const ExperimentConfig& cfg) {
    if (cfg.seeds.empty()) throw ConfigError("seeds must be nonempty");
    if (cfg.lambda_grid && cfg.method != Method::Lore) {
        throw ConfigError("lambda_grid requires method = lore");
    }
    if (cfg.lambda_grid && cfg.lambda_grid->empty()) {
        throw ConfigError("lambda_grid must be nonempty when present");
    }
    if (cfg.ambient_dim <= 0) throw ConfigError("ambient_dim must be positive");
    if (cfg.output_dir.empty()) throw ConfigError("output_dir must be set");
}

[[noreturn]] void rethrow_with_run_id(const std::exception_ptr& eptr,
                                      const std::string& run_id) {
    try {
        std::rethrow_exception(eptr);
    } catch (const SvdFailure& e) {
        throw SvdFailure(run_id + ": " + e.what());
    } catch (const NonFiniteObjective& e) {
        throw NonFiniteObjective(run_id + ": " + e.what());
    } catch (const TestPoolExhausted& e) {
        throw TestPoolExhausted(run_id + ": " + e.what());
    } catch (const DataFormatError& e) {
        throw DataFormatError(e.line, run_id + ": " + e.what());
    } catch (const ConfigError& e) {
        throw ConfigError(run_id + ": " + e.what());
    } catch (const Error& e) {
        throw Error(run_id + ": " + std::string(e.what()));
    } catch (const std::exception& e) {
        throw Error(run_id + ": " + std::string(e.what()));
    }
}

double sample_std(const std::vector<double>& values, double mean) {
    if (values.size() < 2) return 0.0;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace

std::string method_name(Method method) {
    switch (method) {
        case Method::Lore: return "lore";
        case Method::Unregularized: return "unregularized";
        case Method::DimSweep: return "dim_sweep";
    }
    return "lore";
}

Method method_from_name(const std::string& name) {
    if (name == "lore") return Method::Lore;
    if (name == "unregularized") return Method::Unregularized;
    if (name == "dim_sweep") return Method::DimSweep;
    throw ConfigError("unknown method '" + name +
                      "' (expected lore, unregularized or dim_sweep)");
}

json experiment_config_json(const ExperimentConfig& cfg) {
    json data;
    switch (cfg.data.kind) {
        case DataSpec::Kind::Synthetic:
            data["kind"] = "synthetic";
            data["gen"] = cfg.data.gen;
            break;
        case DataSpec::Kind::MatrixFile:
            data["kind"] = "matrix";
            data["gen"] = cfg.data.gen;
            data["matrix_path"] = cfg.data.matrix_path.string();
            break;
        case DataSpec::Kind::TripletFiles:
            data["kind"] = "triplets";
            data["train_path"] = cfg.data.train_path.string();
            data["test_path"] = cfg.data.test_path.string();
            data["n_items"] = cfg.data.n_items;
            break;
    }
    json j{{"data", data},
           {"solver", cfg.solver},
           {"ambient_dim", cfg.ambient_dim},
           {"method", method_name(cfg.method)},
           {"seeds", cfg.seeds},
           {"output_dir", cfg.output_dir.string()},
           {"jobs", cfg.jobs}};
    if (cfg.lambda_grid) j["lambda_grid"] = *cfg.lambda_grid;
    if (cfg.method == Method::DimSweep) {
        j["candidate_dims"] = cfg.candidate_dims;
        j["folds"] = cfg.folds;
    }
    return j;
}

ExperimentConfig experiment_config_from_json(const json& j) {
    ExperimentConfig cfg;
    if (j.contains("data")) {
        const json& data = j.at("data");
        const std::string kind = data.value("kind", "synthetic");
        if (kind == "synthetic") {
            cfg.data.kind = DataSpec::Kind::Synthetic;
        } else if (kind == "matrix") {
            cfg.data.kind = DataSpec::Kind::MatrixFile;
            cfg.data.matrix_path = data.value("matrix_path", "");
        } else if (kind == "triplets") {
            cfg.data.kind = DataSpec::Kind::TripletFiles;
            cfg.data.train_path = data.value("train_path", "");
            cfg.data.test_path = data.value("test_path", "");
            cfg.data.n_items = data.value("n_items", 0);
        } else {
            throw ConfigError("unknown data kind '" + kind + "'");
        }
        if (data.contains("gen")) data.at("gen").get_to(cfg.data.gen);
    }
    if (j.contains("solver")) j.at("solver").get_to(cfg.solver);
    if (j.contains("ambient_dim")) j.at("ambient_dim").get_to(cfg.ambient_dim);
    if (j.contains("method")) cfg.method = method_from_name(j.at("method"));
    if (j.contains("seeds")) j.at("seeds").get_to(cfg.seeds);
    if (j.contains("lambda_grid")) {
        cfg.lambda_grid = j.at("lambda_grid").get<std::vector<double>>();
    }
    if (j.contains("output_dir"))
        cfg.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("jobs")) j.at("jobs").get_to(cfg.jobs);
    if (j.contains("candidate_dims"))
        j.at("candidate_dims").get_to(cfg.candidate_dims);
    if (j.contains("folds")) j.at("folds").get_to(cfg.folds);
    return cfg;
}

ReportRecord run_experiment(const ExperimentConfig& cfg) {
    validate_experiment(cfg);

    const std::vector<double> lambdas =
        cfg.lambda_grid ? *cfg.lambda_grid
                        : std::vector<double>{cfg.method == Method::Lore
                                                  ? cfg.solver.lambda
                                                  : 0.0};

    struct Job {
        std::size_t index;
        std::uint64_t seed;
        double lambda;
    };
    std::vector<Job> jobs;
    for (std::uint64_t seed : cfg.seeds) {
        for (double lambda : lambdas) {
            jobs.push_back({jobs.size(), seed, lambda});
        }
    }

    std::filesystem::create_directories(cfg.output_dir / "runs");

    std::vector<RunRecord> records(jobs.size());
    std::vector<std::exception_ptr> failures(jobs.size());

    const auto run_one = [&](const Job& job) {
        const Dataset data = make_dataset(cfg, job.seed);
        SolverConfig solver = cfg.solver;
        solver.seed = job.seed;
        solver.lambda = job.lambda;

        RunRecord rec;
        rec.seed = job.seed;
        rec.lambda = job.lambda;

        Embedding embedding;
        double fit_seconds = 0.0;
        json fit_detail;
        switch (cfg.method) {
            case Method::Lore: {
                FitResult fit = fit_lore(data.train, data.train.n_items,
                                         cfg.ambient_dim, solver);
                rec.iterations_run = fit.iterations_run;
                rec.converged = fit.converged;
                fit_seconds = fit.wall_time_seconds;
                fit_detail = fit_summary_json(fit);
                embedding = std::move(fit.embedding);
                break;
            }
            case Method::Unregularized: {
                FitResult fit = fit_unregularized(data.train, data.train.n_items,
                                                  cfg.ambient_dim, solver);
                rec.iterations_run = fit.iterations_run;
                rec.converged = fit.converged;
                fit_seconds = fit.wall_time_seconds;
                fit_detail = fit_summary_json(fit);
                embedding = std::move(fit.embedding);
                break;
            }
            case Method::DimSweep: {
                DimSweepResult sweep =
                    dim_sweep_cv(data.train, data.train.n_items,
                                 cfg.candidate_dims, cfg.folds, solver);
                rec.selected_dim = sweep.selected_dim;
                fit_seconds = sweep.wall_time_seconds;
                fit_detail = json{{"selected_dim", sweep.selected_dim},
                                  {"per_dim_cv_accuracy", sweep.per_dim_cv_accuracy},
                                  {"wall_time_seconds", sweep.wall_time_seconds}};
                embedding = std::move(sweep.embedding);
                break;
            }
        }

        rec.metrics.test_accuracy = triplet_accuracy(embedding, data.test);
        rec.metrics.measured_rank = measured_rank(embedding);
        if (data.space) {
            rec.metrics.npd = normalized_procrustes_distance(*data.space, embedding);
            rec.metrics.psnr_db = psnr(*data.space, embedding);
        }
        rec.metrics.wall_time_seconds = fit_seconds;

        rec.detail = json{{"seed", rec.seed},
                          {"lambda", rec.lambda},
                          {"method", method_name(cfg.method)},
                          {"n_items", data.train.n_items},
                          {"ambient_dim", cfg.ambient_dim},
                          {"metrics", rec.metrics},
                          {"fit", fit_detail}};
        if (rec.selected_dim) rec.detail["selected_dim"] = *rec.selected_dim;

        const std::string name = "run" + std::to_string(job.index) + "_seed" +
                                 std::to_string(job.seed) + "_lambda" +
                                 format_compact(job.lambda) + ".json";
        std::ofstream out(cfg.output_dir / "runs" / name);
        if (!out) throw IoError("cannot write run file " + name);
        out << rec.detail.dump(2) << '\n';

        records[job.index] = std::move(rec);
    };

    unsigned pool = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs)
                                 : std::max(1u, std::thread::hardware_concurrency());
    pool = std::min<unsigned>(pool, jobs.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < jobs.size();
             i = next.fetch_add(1)) {
            try {
                run_one(jobs[i]);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> threads;
    for (unsigned w = 1; w < pool; ++w) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (failures[i]) {
            rethrow_with_run_id(failures[i],
                                "run seed=" + std::to_string(jobs[i].seed) +
                                    " lambda=" + format_compact(jobs[i].lambda));
        }
    }

    ReportRecord report;
    report.config_echo = experiment_config_json(cfg);
    report.runs = std::move(records);

    for (double lambda : lambdas) {
        AggregateRow row;
        row.lambda = lambda;
        std::vector<double> acc, rank, time;
        for (const RunRecord& rec : report.runs) {
            if (rec.lambda != lambda) continue;
            acc.push_back(rec.metrics.test_accuracy);
            rank.push_back(static_cast<double>(rec.metrics.measured_rank));
            time.push_back(rec.metrics.wall_time_seconds);
        }
        row.count = static_cast<int>(acc.size());
        const auto mean = [](const std::vector<double>& v) {
            double s = 0.0;
            for (double x : v) s += x;
            return s / static_cast<double>(v.size());
        };
        row.accuracy_mean = mean(acc);
        row.rank_mean = mean(rank);
        row.wall_time_mean = mean(time);
        row.accuracy_std = sample_std(acc, row.accuracy_mean);
        row.rank_std = sample_std(rank, row.rank_mean);
        row.wall_time_std = sample_std(time, row.wall_time_mean);
        report.aggregates.push_back(row);
    }

    json aggregates = json::array();
    for (const AggregateRow& row : report.aggregates) {
        aggregates.push_back(json{{"lambda", row.lambda},
                                  {"count", row.count},
                                  {"accuracy_mean", row.accuracy_mean},
                                  {"accuracy_std", row.accuracy_std},
                                  {"rank_mean", row.rank_mean},
                                  {"rank_std", row.rank_std},
                                  {"wall_time_mean", row.wall_time_mean},
                                  {"wall_time_std", row.wall_time_std}});
    }
    json runs = json::array();
    for (const RunRecord& rec : report.runs) {
        json r{{"seed", rec.seed},
               {"lambda", rec.lambda},
               {"metrics", rec.metrics},
               {"iterations_run", rec.iterations_run},
               {"converged", rec.converged}};
        if (rec.selected_dim) r["selected_dim"] = *rec.selected_dim;
        runs.push_back(std::move(r));
    }
    json report_json{{"config", report.config_echo},
                     {"runs", runs},
                     {"aggregates", aggregates}};
    {
        std::ofstream out(cfg.output_dir / "report.json");
        if (!out) throw IoError("cannot write report.json");
        out << report_json.dump(2) << '\n';
    }

    // flat plot-ready table
    {
        std::ofstream out(cfg.output_dir / "report.csv");
        if (!out) throw IoError("cannot write report.csv");
        out << "seed,lambda,accuracy,rank,npd,psnr,time\n";
        for (const RunRecord& rec : report.runs) {
            out << rec.seed << ',' << format_compact(rec.lambda) << ','
                << format_compact(rec.metrics.test_accuracy) << ','
                << rec.metrics.measured_rank << ',';
            if (rec.metrics.npd) out << format_compact(*rec.metrics.npd);
            out << ',';
            if (rec.metrics.psnr_db) out << format_compact(*rec.metrics.psnr_db);
            out << ',' << format_compact(rec.metrics.wall_time_seconds) << '\n';
        }
    }
    return report;
}

}  // namespace lore
