#include "noisefilter/filters.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>

#include "json.hpp"
#include "noisefilter/classifiers/nearest_neighbor.hpp"
#include "noisefilter/classifiers/random_forest.hpp"
#include "noisefilter/errors.hpp"
#include "noisefilter/partition.hpp"
#include "noisefilter/random.hpp"

namespace noisefilter {
namespace {

using Clock = std::chrono::steady_clock;

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

void check_partitions(const Dataset& data, const FilterConfig& config) {
    if (data.empty()) throw ArgumentError("cannot filter an empty dataset");
    if (config.partitions < 2) throw ArgumentError("partitions must be at least 2");
    if (config.n_trees < 1) throw ArgumentError("n_trees must be at least 1");
}

ForestParams forest_params(const FilterConfig& config, std::size_t fold) {
    return ForestParams{.n_trees = config.n_trees,
                        .max_depth = config.max_depth,
                        .max_bins = config.max_bins,
                        .seed = derive_seed(config.seed, 1000 + fold)};
}

/// Splits row ids by the removal marks and assembles the report.
FilterReport finish(const Dataset& data, const std::vector<bool>& noisy, FilterConfig config,
                    std::vector<FoldCount> folds, std::size_t predictions, Clock::time_point start) {
    FilterReport report;
    for (InstanceId i = 0; i < data.size(); ++i) (noisy[i] ? report.removed_ids : report.kept_ids).push_back(i);
    report.kept = data.subset(report.kept_ids);
    report.folds = std::move(folds);
    report.predictions_made = predictions;
    report.config = std::move(config);
    report.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return report;
}

}  // namespace

std::string_view to_string(VoteScheme vote) { return vote == VoteScheme::majority ? "majority" : "consensus"; }

std::string_view to_string(FilterMethod method) {
    switch (method) {
        case FilterMethod::hme: return "HME-BD";
        case FilterMethod::hte: return "HTE-BD";
        case FilterMethod::enn: return "ENN-BD";
    }
    return "?";
}

std::optional<VoteScheme> parse_vote_scheme(std::string_view text) {
    const auto t = lower(text);
    if (t == "majority") return VoteScheme::majority;
    if (t == "consensus") return VoteScheme::consensus;
    return std::nullopt;
}

std::optional<FilterMethod> parse_filter_method(std::string_view text) {
    const auto t = lower(text);
    if (t == "hme" || t == "hme-bd") return FilterMethod::hme;
    if (t == "hte" || t == "hte-bd") return FilterMethod::hte;
    if (t == "enn" || t == "enn-bd") return FilterMethod::enn;
    return std::nullopt;
}

std::string FilterConfig::label() const {
    std::string out(to_string(method));
    if (method == FilterMethod::enn) return out;
    out += "[P=" + std::to_string(partitions) + " trees=" + std::to_string(n_trees);
    if (method == FilterMethod::hte) out += " vote=" + std::string(to_string(vote));
    return out + "]";
}

bool vote_decision(unsigned disagreement_count, VoteScheme vote) {
    if (disagreement_count > 3) throw ArgumentError("disagreement count must lie in 0..3");
    return vote == VoteScheme::majority ? disagreement_count >= 2 : disagreement_count == 3;
}

FilterReport hme_bd(const Dataset& data, const FilterConfig& config, const Executor& exec) {
    const auto start = Clock::now();
    check_partitions(data, config);
    const auto folds = k_fold(data, config.partitions, config.seed, {.stratified = config.stratified});

    std::vector<bool> noisy(data.size(), false);
    std::vector<FoldCount> counts;
    std::size_t predictions = 0;
    for (const auto& fold : folds) {
        const Dataset train = data.subset(fold.train_ids);
        const Dataset test = data.subset(fold.test_ids);
        const auto model = train_random_forest(train, forest_params(config, fold.fold_index), exec);
        const auto predicted = model.predict(test, exec);
        FoldCount fc{fold.fold_index, train.size(), test.size(), 0};
        for (std::size_t k = 0; k < fold.test_ids.size(); ++k) {
            if (predicted[k] != test.label(k)) {
                noisy[fold.test_ids[k]] = true;
                ++fc.removed;
            }
        }
        predictions += predicted.size();
        counts.push_back(fc);
    }
    FilterConfig echo = config;
    echo.method = FilterMethod::hme;
    return finish(data, noisy, echo, std::move(counts), predictions, start);
}

std::vector<std::uint8_t> hte_disagreements(const Dataset& data, const FilterConfig& config, const Executor& exec,
                                            std::vector<FoldCount>* fold_counts) {
    check_partitions(data, config);
    const auto folds = k_fold(data, config.partitions, config.seed, {.stratified = config.stratified});

    std::vector<std::uint8_t> disagreements(data.size(), 0);
    for (const auto& fold : folds) {
        if (fold.train_ids.size() < 2) throw ArgumentError("each fold's train part needs at least 2 instances");
        const Dataset train = data.subset(fold.train_ids);
        const Dataset test = data.subset(fold.test_ids);

        const auto forest = train_random_forest(train, forest_params(config, fold.fold_index), exec);
        const auto logistic = train_logistic_regression(train, config.logistic);
        const NearestNeighborModel knn(train, 1);

        const auto rf = forest.predict(test, exec);
        const auto lr = logistic.predict(test);
        const auto nn = predict_1nn(knn, test, false, exec);
        for (std::size_t k = 0; k < test.size(); ++k) {
            const Label truth = test.label(k);
            disagreements[fold.test_ids[k]] =
                static_cast<std::uint8_t>((rf[k] != truth) + (lr[k] != truth) + (nn[k] != truth));
        }
        if (fold_counts) fold_counts->push_back({fold.fold_index, train.size(), test.size(), 0});
    }
    return disagreements;
}

FilterReport hte_bd(const Dataset& data, const FilterConfig& config, const Executor& exec) {
    const auto start = Clock::now();
    std::vector<FoldCount> counts;
    const auto disagreements = hte_disagreements(data, config, exec, &counts);
    const auto folds = k_fold(data, config.partitions, config.seed, {.stratified = config.stratified});

    std::vector<bool> noisy(data.size(), false);
    for (InstanceId i = 0; i < data.size(); ++i) noisy[i] = vote_decision(disagreements[i], config.vote);
    for (const auto& fold : folds) {
        for (InstanceId id : fold.test_ids) counts[fold.fold_index].removed += noisy[id] ? 1 : 0;
    }
    FilterConfig echo = config;
    echo.method = FilterMethod::hte;
    return finish(data, noisy, echo, std::move(counts), data.size(), start);
}

FilterReport enn_bd(const Dataset& data, const Executor& exec) {
    const auto start = Clock::now();
    if (data.size() < 2) throw ArgumentError("ENN-BD needs at least 2 instances");
    const Dataset base = data.rebased();
    const NearestNeighborModel model(base, 1);
    const auto predicted = predict_1nn(model, base, true, exec);

    std::vector<bool> noisy(data.size(), false);
    std::size_t removed = 0;
    for (InstanceId i = 0; i < data.size(); ++i) {
        noisy[i] = predicted[i] != data.label(i);
        removed += noisy[i] ? 1 : 0;
    }
    FilterConfig echo;
    echo.method = FilterMethod::enn;
    echo.partitions = 0;
    echo.n_trees = 0;
    echo.max_depth = 0;
    echo.max_bins = 0;
    return finish(data, noisy, echo, {{0, data.size(), data.size(), removed}}, data.size(), start);
}

FilterReport run_filter(const Dataset& data, const FilterConfig& config, const Executor& exec) {
    switch (config.method) {
        case FilterMethod::hme: return hme_bd(data, config, exec);
        case FilterMethod::hte: return hte_bd(data, config, exec);
        case FilterMethod::enn: return enn_bd(data, exec);
    }
    throw ArgumentError("unknown filter method");
}

std::string report_to_json(const FilterReport& report, bool include_removed_ids) {
    using nlohmann::json;
    const auto& c = report.config;
    json config{{"filter", std::string(to_string(c.method))}};
    if (c.method != FilterMethod::enn) {
        config["partitions"] = c.partitions;
        config["trees"] = c.n_trees;
        config["max_depth"] = c.max_depth;
        config["max_bins"] = c.max_bins;
        config["seed"] = c.seed;
        config["stratified"] = c.stratified;
    }
    if (c.method == FilterMethod::hte) {
        config["vote"] = std::string(to_string(c.vote));
        config["logistic"] = {{"iterations", c.logistic.iterations}, {"step", c.logistic.step}, {"l2", c.logistic.l2}};
    }
    json folds = json::array();
    for (const auto& f : report.folds) {
        folds.push_back({{"fold", f.fold_index}, {"train", f.train_size}, {"test", f.test_size}, {"removed", f.removed}});
    }
    json doc{{"format", "noisefilter-filter-report"},
             {"version", 1},
             {"config", std::move(config)},
             {"input_size", report.kept_ids.size() + report.removed_ids.size()},
             {"kept", report.kept_ids.size()},
             {"removed", report.removed_ids.size()},
             {"predictions_made", report.predictions_made},
             {"folds", std::move(folds)},
             {"wall_seconds", report.wall_seconds}};
    if (include_removed_ids) doc["removed_ids"] = report.removed_ids;
    return doc.dump(2);
}

}  // namespace noisefilter
