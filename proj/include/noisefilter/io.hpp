#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "noisefilter/dataset.hpp"

namespace noisefilter::io {

/// Column selector: a 0-based index (negative counts from the end) or a
/// header name.
using ColumnSelector = std::variant<long, std::string>;

enum class HeaderMode { detect, present, absent };

/// How non-numeric feature columns are handled.
enum class CategoricalEncoding {
    reject,   ///< any non-numeric feature value is a format error
    ordinal,  ///< first-seen order, one column
    one_hot,  ///< one 0/1 column per category, first-seen order
};

struct CsvOptions {
    ColumnSelector label_column = -1L;
    HeaderMode header = HeaderMode::detect;
    CategoricalEncoding categorical = CategoricalEncoding::reject;
    std::optional<std::size_t> num_classes;  ///< override of the inferred class count
    char delimiter = ',';
};

/// Loads a CSV file. Labels that are all non-negative integers are used as
/// class indices directly; other label sets are mapped to dense indices
/// (numeric labels in ascending order, strings in first-seen order).
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});
Dataset read_csv(std::istream& in, const CsvOptions& options = {});

/// Loads a LibSVM/SVMLight file into a dense dataset. Labels are mapped to
/// dense indices in ascending numeric order, e.g. {-1,+1} -> {0,1}.
Dataset load_libsvm(const std::filesystem::path& path,
                    std::optional<std::size_t> num_features = std::nullopt);
Dataset read_libsvm(std::istream& in, std::optional<std::size_t> num_features = std::nullopt);

/// Writes features then the label index as the last column, no header.
/// Values are written in shortest round-trip form, so reloading is exact.
void write_csv(const Dataset& data, std::ostream& out);
void save_csv(const Dataset& data, const std::filesystem::path& path);

/// Writes `<label> <idx>:<val> ...` with zero features omitted. Labels are
/// written as their class index.
void write_libsvm(const Dataset& data, std::ostream& out);
void save_libsvm(const Dataset& data, const std::filesystem::path& path);

/// Small JSON sidecar: n, num_features, num_classes, label mapping.
std::string metadata_json(const Dataset& data);

enum class FileFormat { csv, libsvm };

/// ".libsvm", ".svm", ".svmlight" map to libsvm; anything else to csv.
FileFormat format_from_extension(const std::filesystem::path& path);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace noisefilter::io
