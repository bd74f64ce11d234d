#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "noisefilter/dataset.hpp"
#include "noisefilter/executor.hpp"
#include "noisefilter/filters.hpp"
#include "noisefilter/io.hpp"

namespace noisefilter {

inline constexpr int kExperimentSchemaVersion = 1;

struct DatasetSource {
    enum class Kind { blobs, xor_grid, csv, libsvm };
    Kind kind = Kind::blobs;
    std::string name = "blobs";
    // Synthetic generators.
    std::size_t n = 5000;
    std::size_t num_features = 8;
    double separation = 8.0;
    std::uint64_t seed = 1;
    // Files.
    std::filesystem::path path;
    io::CsvOptions csv;
};

Dataset load_source(const DatasetSource& source);

struct ClassifierSpec {
    enum class Kind { nearest_neighbor, decision_tree };
    Kind kind = Kind::nearest_neighbor;
    std::size_t max_depth = 20;
    std::size_t max_bins = 32;

    std::string name() const;
};

struct ExperimentConfig {
    DatasetSource dataset;
    double train_fraction = 0.5;
    std::vector<double> noise_levels{0.0, 0.05, 0.10, 0.15, 0.20};
    std::vector<FilterConfig> filters;
    std::vector<ClassifierSpec> classifiers{ClassifierSpec{}};
    std::uint64_t seed = 1;
    std::size_t repetitions = 5;
};

/// Parses the JSON benchmark config. Relative file paths are resolved
/// against `base_dir`. Throws ConfigError naming the offending field.
ExperimentConfig parse_experiment_config(const std::string& json_text,
                                         const std::filesystem::path& base_dir = {});

/// Mean and sample standard deviation over the repetitions where the metric
/// was defined; `count` == 0 means undefined in every repetition.
struct MetricSummary {
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t count = 0;

    bool defined() const noexcept { return count > 0; }
    friend bool operator==(const MetricSummary&, const MetricSummary&) = default;
};

MetricSummary summarize(const std::vector<double>& values);

struct ExperimentRow {
    std::string dataset;
    double noise_level = 0.0;
    std::string filter;  ///< "Original" for the unfiltered baseline
    std::string classifier;
    std::size_t repetitions = 0;
    MetricSummary accuracy;
    MetricSummary kept;
    MetricSummary recall;
    MetricSummary precision;
    MetricSummary filter_seconds;
};

/// One (level, repetition, filter) execution. Used for hygiene and
/// determinism checks.
struct CellTrace {
    double noise_level = 0.0;
    std::size_t repetition = 0;
    std::string filter;
    std::uint64_t test_digest = 0;
    std::vector<InstanceId> removed_ids;
    std::vector<double> accuracies;  ///< one per classifier, config order
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    std::vector<CellTrace> cells;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
};

/// Splits once (clean test set shared by every cell), then for each noise
/// level and repetition injects noise into the train part, runs each filter
/// and trains/scores every classifier; the unfiltered baseline is labelled
/// "Original". Rows are ordered level, then Original followed by filters in
/// config order, then classifiers in config order.
ExperimentResult run_experiment(const ExperimentConfig& config, const Executor& exec = Executor{});

/// Fixed header; undefined metrics are empty fields; timing columns last.
std::string rows_to_csv(const std::vector<ExperimentRow>& rows);
std::string result_to_json(const ExperimentResult& result, const ExperimentConfig& config);

/// Header line of rows_to_csv.
std::string experiment_csv_header();

}  // namespace noisefilter
