/// @file  io.hpp
/// @brief File formats: triplet CSV, matrix CSV and JSON serialization of
///        configs and results.

#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>

#include <lore/baselines.hpp>
#include <lore/datagen.hpp>
#include <lore/types.hpp>

namespace lore {

using json = nlohmann::ordered_json;

/// Parses one triplet per line: three comma-separated 0-based integers
/// (anchor, near, far). An optional header line "a,i,j" is skipped.
/// With n_items <= 0 the item count is inferred as max index + 1.
/// Validation failures carry the 1-based file line.
TripletSet load_triplets_csv(const std::filesystem::path& path, int n_items = 0);

/// Writes the triplet CSV format (no header).
void save_triplets_csv(const TripletSet& ts, const std::filesystem::path& path);

/// Reads a row-major CSV of decimal floats; the shape is inferred from the
/// row and column counts. Rejects ragged rows, non-finite values and empty
/// files.
Matrix load_matrix_csv(const std::filesystem::path& path);

/// Writes a matrix as CSV with 17 significant digits (full double
/// round-trip precision).
void save_matrix_csv(const Matrix& m, const std::filesystem::path& path);

/// Embedding convenience wrappers over the matrix CSV format.
void save_embedding_csv(const Embedding& z, const std::filesystem::path& path);
Embedding load_embedding_csv(const std::filesystem::path& path);

// JSON serialization. Matrices travel through CSV files; JSON covers
// configuration and result records.
void to_json(json& j, const SolverConfig& cfg);
void from_json(const json& j, SolverConfig& cfg);
void to_json(json& j, const GenConfig& cfg);
void from_json(const json& j, GenConfig& cfg);
void to_json(json& j, const MetricsReport& report);
void from_json(const json& j, MetricsReport& report);

/// Fit diagnostics without the embedding matrix itself.
json fit_summary_json(const FitResult& fit);

}  // namespace lore
