#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "noisefilter/classifiers/split_candidates.hpp"
#include "noisefilter/dataset.hpp"
#include "noisefilter/executor.hpp"

namespace noisefilter {

struct TreeNode {
    static constexpr std::uint32_t kNone = UINT32_MAX;

    std::int32_t feature = -1;  ///< -1 marks a leaf
    double threshold = 0.0;     ///< go left iff x[feature] <= threshold
    std::uint32_t left = kNone;
    std::uint32_t right = kNone;
    Label label = 0;  ///< majority class of the node's training weight

    bool is_leaf() const noexcept { return feature < 0; }
    friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// Binary classification tree stored as a flat node array; node 0 is the root.
class DecisionTreeModel {
public:
    DecisionTreeModel() = default;
    DecisionTreeModel(std::vector<TreeNode> nodes, std::size_t num_features, std::size_t num_classes);

    Label predict(std::span<const double> features) const;
    std::vector<Label> predict(const Dataset& batch) const;

    /// Longest root-to-leaf path in edges (a lone root leaf has depth 0).
    std::size_t depth() const;

    const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
    std::size_t num_features() const noexcept { return num_features_; }
    std::size_t num_classes() const noexcept { return num_classes_; }

    friend bool operator==(const DecisionTreeModel&, const DecisionTreeModel&) = default;

private:
    std::vector<TreeNode> nodes_;
    std::size_t num_features_ = 0;
    std::size_t num_classes_ = 0;
};

struct TreeParams {
    std::size_t max_depth = 20;
    std::size_t max_bins = 32;
    std::size_t feature_subset = 0;  ///< features tried per node; 0 means all
    std::uint64_t seed = 0;
};

/// Greedy gini tree: each node tries every candidate threshold of its
/// feature subset and takes the largest impurity decrease. Growth stops at
/// max_depth, at a pure node, or when no split decreases impurity. Leaves
/// predict the majority class, ties to the lowest index.
DecisionTreeModel train_decision_tree(const Dataset& train, const TreeParams& params);

namespace detail {

/// Grows one tree over pre-binned data with integer instance weights
/// (bootstrap multiplicities). Rows of weight 0 are ignored.
DecisionTreeModel grow_tree(const BinnedMatrix& bins, const SplitCandidateTable& table,
                            std::span<const Label> labels, std::span<const std::uint32_t> weights,
                            std::size_t num_classes, std::size_t max_depth, std::size_t feature_subset,
                            std::uint64_t seed);

}  // namespace detail
}  // namespace noisefilter
