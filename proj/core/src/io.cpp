#include <lore/io.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace lore {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

int parse_int(std::string_view field, std::size_t line_no) {
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw DataFormatError(line_no, "line " + std::to_string(line_no) +
                                           ": expected integer, got '" +
                                           std::string(field) + "'");
    }
    return value;
}

double parse_double(std::string_view field, std::size_t line_no) {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw DataFormatError(line_no, "line " + std::to_string(line_no) +
                                           ": expected number, got '" +
                                           std::string(field) + "'");
    }
    return value;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    return in;
}

void format_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

TripletSet load_triplets_csv(const std::filesystem::path& path, int n_items) {
    std::ifstream in = open_for_read(path);
    TripletSet ts;
    std::string line;
    std::size_t line_no = 0;
    int max_index = -1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty()) continue;
        if (line_no == 1 && body == "a,i,j") continue;  // optional header
        const auto fields = split_fields(body);
        if (fields.size() != 3) {
            throw DataFormatError(line_no,
                                  "line " + std::to_string(line_no) +
                                      ": expected 3 comma-separated indices, got " +
                                      std::to_string(fields.size()));
        }
        Triplet t{parse_int(fields[0], line_no), parse_int(fields[1], line_no),
                  parse_int(fields[2], line_no)};
        if (t.anchor == t.near || t.anchor == t.far || t.near == t.far) {
            throw DegenerateTriplet(line_no,
                                    "line " + std::to_string(line_no) +
                                        ": triplet indices are not pairwise distinct");
        }
        if (t.anchor < 0 || t.near < 0 || t.far < 0 ||
            (n_items > 0 &&
             (t.anchor >= n_items || t.near >= n_items || t.far >= n_items))) {
            throw IndexOutOfRange(line_no, "line " + std::to_string(line_no) +
                                               ": item index outside [0, " +
                                               std::to_string(n_items) + ")");
        }
        max_index = std::max({max_index, t.anchor, t.near, t.far});
        ts.triplets.push_back(t);
    }
    ts.n_items = n_items > 0 ? n_items : max_index + 1;
    validate_triplet_set(ts, ts.n_items);
    return ts;
}

void save_triplets_csv(const TripletSet& ts, const std::filesystem::path& path) {
    std::ofstream out = open_for_write(path);
    std::string buffer;
    for (const Triplet& t : ts.triplets) {
        buffer += std::to_string(t.anchor);
        buffer += ',';
        buffer += std::to_string(t.near);
        buffer += ',';
        buffer += std::to_string(t.far);
        buffer += '\n';
    }
    out << buffer;
    if (!out) throw IoError("write failed: " + path.string());
}

Matrix load_matrix_csv(const std::filesystem::path& path) {
    std::ifstream in = open_for_read(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t cols = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty()) continue;
        const auto fields = split_fields(body);
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& field : fields) {
            const double v = parse_double(field, line_no);
            if (!std::isfinite(v)) {
                throw DataFormatError(line_no, "line " + std::to_string(line_no) +
                                                   ": non-finite value");
            }
            row.push_back(v);
        }
        if (cols == 0) {
            cols = row.size();
        } else if (row.size() != cols) {
            throw DataFormatError(line_no,
                                  "line " + std::to_string(line_no) + ": expected " +
                                      std::to_string(cols) + " columns, got " +
                                      std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw DataFormatError(0, "empty matrix file: " + path.string());
    }
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                rows[r][c];
        }
    }
    return m;
}

void save_matrix_csv(const Matrix& m, const std::filesystem::path& path) {
    std::ofstream out = open_for_write(path);
    std::string buffer;
    buffer.reserve(static_cast<std::size_t>(m.size()) * 20);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c > 0) buffer += ',';
            format_double(buffer, m(r, c));
        }
        buffer += '\n';
    }
    out << buffer;
    if (!out) throw IoError("write failed: " + path.string());
}

void save_embedding_csv(const Embedding& z, const std::filesystem::path& path) {
    save_matrix_csv(z.matrix, path);
}

Embedding load_embedding_csv(const std::filesystem::path& path) {
    return Embedding{load_matrix_csv(path)};
}

void to_json(json& j, const SolverConfig& cfg) {
    j = json{{"lambda", cfg.lambda},
             {"p", cfg.p},
             {"mu", cfg.mu},
             {"tol", cfg.tol},
             {"max_iters", cfg.max_iters},
             {"init_variance", cfg.init_variance},
             {"seed", cfg.seed}};
}

void from_json(const json& j, SolverConfig& cfg) {
    cfg = SolverConfig{};
    if (j.contains("lambda")) j.at("lambda").get_to(cfg.lambda);
    if (j.contains("p")) j.at("p").get_to(cfg.p);
    if (j.contains("mu")) j.at("mu").get_to(cfg.mu);
    if (j.contains("tol")) j.at("tol").get_to(cfg.tol);
    if (j.contains("max_iters")) j.at("max_iters").get_to(cfg.max_iters);
    if (j.contains("init_variance")) j.at("init_variance").get_to(cfg.init_variance);
    if (j.contains("seed")) j.at("seed").get_to(cfg.seed);
}

void to_json(json& j, const GenConfig& cfg) {
    j = json{{"n_items", cfg.n_items},
             {"intrinsic_rank", cfg.intrinsic_rank},
             {"noise_variance", cfg.noise_variance},
             {"query_fraction", cfg.query_fraction},
             {"test_size", cfg.test_size},
             {"seed", cfg.seed}};
}

void from_json(const json& j, GenConfig& cfg) {
    cfg = GenConfig{};
    if (j.contains("n_items")) j.at("n_items").get_to(cfg.n_items);
    if (j.contains("intrinsic_rank")) j.at("intrinsic_rank").get_to(cfg.intrinsic_rank);
    if (j.contains("noise_variance")) j.at("noise_variance").get_to(cfg.noise_variance);
    if (j.contains("query_fraction")) j.at("query_fraction").get_to(cfg.query_fraction);
    if (j.contains("test_size")) j.at("test_size").get_to(cfg.test_size);
    if (j.contains("seed")) j.at("seed").get_to(cfg.seed);
}

void to_json(json& j, const MetricsReport& report) {
    j = json{{"test_accuracy", report.test_accuracy},
             {"measured_rank", report.measured_rank}};
    if (report.npd) j["npd"] = *report.npd;
    if (report.psnr_db) {
        if (std::isinf(*report.psnr_db)) {
            j["psnr_db"] = "inf";  // JSON has no infinity literal
        } else {
            j["psnr_db"] = *report.psnr_db;
        }
    }
    j["wall_time_seconds"] = report.wall_time_seconds;
}

void from_json(const json& j, MetricsReport& report) {
    report = MetricsReport{};
    j.at("test_accuracy").get_to(report.test_accuracy);
    j.at("measured_rank").get_to(report.measured_rank);
    if (j.contains("npd")) report.npd = j.at("npd").get<double>();
    if (j.contains("psnr_db")) {
        if (j.at("psnr_db").is_string()) {
            report.psnr_db = std::numeric_limits<double>::infinity();
        } else {
            report.psnr_db = j.at("psnr_db").get<double>();
        }
    }
    if (j.contains("wall_time_seconds"))
        j.at("wall_time_seconds").get_to(report.wall_time_seconds);
}

json fit_summary_json(const FitResult& fit) {
    return json{{"iterations_run", fit.iterations_run},
                {"converged", fit.converged},
                {"objective_trace", fit.objective_trace},
                {"iterate_delta_trace", fit.iterate_delta_trace},
                {"wall_time_seconds", fit.wall_time_seconds}};
}

}  // namespace lore
