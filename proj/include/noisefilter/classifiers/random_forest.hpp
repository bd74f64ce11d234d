#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "noisefilter/classifiers/decision_tree.hpp"
#include "noisefilter/dataset.hpp"
#include "noisefilter/executor.hpp"

namespace noisefilter {

struct ForestParams {
    std::size_t n_trees = 100;
    std::size_t max_depth = 10;
    std::size_t max_bins = 32;
    std::uint64_t seed = 0;
    /// Test hook: train every tree on the full data instead of a resample.
    bool bootstrap = true;
};

/// "auto" feature subset: ceil(sqrt(num_features)) for a forest, all
/// features for a single tree.
std::size_t auto_feature_subset(std::size_t num_features, std::size_t n_trees);

class RandomForestModel {
public:
    RandomForestModel() = default;
    RandomForestModel(std::vector<DecisionTreeModel> trees, std::vector<std::uint64_t> tree_seeds,
                      std::size_t feature_subset, std::size_t num_features, std::size_t num_classes);

    /// Majority vote over trees, ties to the lowest class index.
    std::vector<Label> predict(const Dataset& batch, const Executor& exec = Executor{}) const;
    Label predict(std::span<const double> features) const;

    const std::vector<DecisionTreeModel>& trees() const noexcept { return trees_; }
    const std::vector<std::uint64_t>& tree_seeds() const noexcept { return tree_seeds_; }
    std::size_t feature_subset() const noexcept { return feature_subset_; }
    std::size_t num_features() const noexcept { return num_features_; }
    std::size_t num_classes() const noexcept { return num_classes_; }

    friend bool operator==(const RandomForestModel&, const RandomForestModel&) = default;

private:
    std::vector<DecisionTreeModel> trees_;
    std::vector<std::uint64_t> tree_seeds_;
    std::size_t feature_subset_ = 1;
    std::size_t num_features_ = 0;
    std::size_t num_classes_ = 0;
};

/// Bagged gini trees. Split candidates and bins are computed once on the
/// full training set; each tree then sees a size-n bootstrap resample
/// (as multiplicity weights) drawn from derive_seed(seed, tree index).
/// Trees are trained in parallel; the model is identical for any thread count.
RandomForestModel train_random_forest(const Dataset& train, const ForestParams& params,
                                      const Executor& exec = Executor{});

/// Majority label of `votes` (one entry per voter), ties to lowest index.
Label majority_vote(std::span<const Label> votes, std::size_t num_classes);

}  // namespace noisefilter
