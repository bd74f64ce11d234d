#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "noisefilter/classifiers/logistic_regression.hpp"
#include "noisefilter/dataset.hpp"
#include "noisefilter/executor.hpp"

namespace noisefilter {

enum class VoteScheme { majority, consensus };
enum class FilterMethod { hme, hte, enn };

std::string_view to_string(VoteScheme vote);
std::string_view to_string(FilterMethod method);
std::optional<VoteScheme> parse_vote_scheme(std::string_view text);
/// Accepts "hme"/"hme-bd", "hte"/"hte-bd", "enn"/"enn-bd", case-insensitive.
std::optional<FilterMethod> parse_filter_method(std::string_view text);

/// Parameters of any filter; fields a method does not use are ignored but
/// still echoed in its report.
struct FilterConfig {
    FilterMethod method = FilterMethod::hme;
    std::size_t partitions = 4;
    std::size_t n_trees = 100;
    std::size_t max_depth = 10;
    std::size_t max_bins = 32;
    VoteScheme vote = VoteScheme::majority;
    std::uint64_t seed = 0;
    bool stratified = false;
    LogisticParams logistic{};

    /// Short comma-free label, e.g. "HTE-BD[P=4 trees=100 vote=majority]".
    std::string label() const;
};

struct FoldCount {
    std::size_t fold_index = 0;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    std::size_t removed = 0;
};

/// Result of a filter run. Ids are row ids of the filtered dataset.
struct FilterReport {
    Dataset kept;
    std::vector<InstanceId> kept_ids;     ///< ascending
    std::vector<InstanceId> removed_ids;  ///< ascending
    std::vector<FoldCount> folds;
    std::size_t predictions_made = 0;  ///< out-of-fold (or self-excluded) predictions
    double wall_seconds = 0.0;
    FilterConfig config;
};

/// Majority removes when at least 2 of the 3 classifiers disagree with the
/// label; consensus only when all 3 do. Throws ArgumentError when count > 3.
bool vote_decision(unsigned disagreement_count, VoteScheme vote);

/// Homogeneous ensemble: k-fold the data, train a random forest on each
/// train part, and remove each test instance whose prediction differs from
/// its label. Every instance is predicted exactly once.
FilterReport hme_bd(const Dataset& data, const FilterConfig& config, const Executor& exec = Executor{});

/// Per-instance count (0..3) of forest, logistic regression and 1NN
/// out-of-fold predictions that disagree with the label. `folds`, when given,
/// receives fold sizes (removed counts left at 0).
std::vector<std::uint8_t> hte_disagreements(const Dataset& data, const FilterConfig& config,
                                            const Executor& exec = Executor{},
                                            std::vector<FoldCount>* folds = nullptr);

/// Heterogeneous ensemble: hte_disagreements followed by vote_decision.
FilterReport hte_bd(const Dataset& data, const FilterConfig& config, const Executor& exec = Executor{});

/// Edited nearest neighbor: remove every instance whose nearest other
/// instance (self excluded by id) carries a different label.
FilterReport enn_bd(const Dataset& data, const Executor& exec = Executor{});

/// Dispatches on config.method.
FilterReport run_filter(const Dataset& data, const FilterConfig& config, const Executor& exec = Executor{});

/// Config echo, counts, timing, and optionally the removed id list.
std::string report_to_json(const FilterReport& report, bool include_removed_ids);

}  // namespace noisefilter
