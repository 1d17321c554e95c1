/// @file  errors.hpp
/// @brief Exception types raised by the lore library.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lore {

/// Base class for every error raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A triplet references an item index outside [0, n_items).
/// `position` is the 0-based index of the offending triplet (or the
/// 1-based line number when raised by a file loader).
struct IndexOutOfRange : Error {
    IndexOutOfRange(std::size_t position, const std::string& what)
        : Error(what), position(position) {}
    std::size_t position;
};

/// A triplet's anchor/near/far indices are not pairwise distinct.
struct DegenerateTriplet : Error {
    DegenerateTriplet(std::size_t position, const std::string& what)
        : Error(what), position(position) {}
    std::size_t position;
};

/// The SVD routine failed to converge on a numerically pathological input.
struct SvdFailure : Error {
    using Error::Error;
};

/// The objective became NaN/Inf during optimization (e.g. mu below the
/// Lipschitz bound of the loss gradient).
struct NonFiniteObjective : Error {
    using Error::Error;
};

/// Fewer unseen (anchor, pair) combinations remain than requested test queries.
struct TestPoolExhausted : Error {
    using Error::Error;
};

/// A cross-validation fold was left with an empty training partition.
struct InsufficientTriplets : Error {
    using Error::Error;
};

/// Accuracy was requested over an empty triplet set.
struct EmptyTestSet : Error {
    using Error::Error;
};

/// The centered embedding has (near-)zero Frobenius norm; alignment ratios
/// are undefined.
struct DegenerateEmbedding : Error {
    using Error::Error;
};

/// The aligned embedding's maximum entry is <= 0, so the PSNR log is undefined.
struct NonPositivePeak : Error {
    using Error::Error;
};

/// Invalid configuration (bad parameter value or inconsistent fields).
struct ConfigError : Error {
    using Error::Error;
};

/// A data file could not be parsed. `line` is 1-based; 0 means the whole file.
struct DataFormatError : Error {
    DataFormatError(std::size_t line, const std::string& what)
        : Error(what), line(line) {}
    std::size_t line;
};

/// Filesystem-level read/write failure.
struct IoError : Error {
    using Error::Error;
};

}  // namespace lore
