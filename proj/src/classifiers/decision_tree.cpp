#include "noisefilter/classifiers/decision_tree.hpp"

#include <algorithm>
#include <numeric>

#include "noisefilter/errors.hpp"
#include "noisefilter/random.hpp"

namespace noisefilter {

DecisionTreeModel::DecisionTreeModel(std::vector<TreeNode> nodes, std::size_t num_features,
                                     std::size_t num_classes)
    : nodes_(std::move(nodes)), num_features_(num_features), num_classes_(num_classes) {
    if (nodes_.empty()) throw ArgumentError("tree needs at least one node");
    for (const auto& node : nodes_) {
        if (node.label >= num_classes_) throw ArgumentError("tree leaf label out of range");
        if (node.is_leaf()) continue;
        if (static_cast<std::size_t>(node.feature) >= num_features_ || node.left >= nodes_.size() ||
            node.right >= nodes_.size()) {
            throw ArgumentError("malformed tree node");
        }
    }
}

Label DecisionTreeModel::predict(std::span<const double> features) const {
    std::uint32_t at = 0;
    while (!nodes_[at].is_leaf()) {
        const auto& node = nodes_[at];
        at = features[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
    }
    return nodes_[at].label;
}

std::vector<Label> DecisionTreeModel::predict(const Dataset& batch) const {
    if (!batch.empty() && batch.num_features() != num_features_) {
        throw ArgumentError("batch feature arity does not match the tree");
    }
    std::vector<Label> out(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) out[i] = predict(batch.row(i));
    return out;
}

std::size_t DecisionTreeModel::depth() const {
    std::size_t deepest = 0;
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        const auto [at, d] = stack.back();
        stack.pop_back();
        deepest = std::max(deepest, d);
        if (!nodes_[at].is_leaf()) {
            stack.emplace_back(nodes_[at].left, d + 1);
            stack.emplace_back(nodes_[at].right, d + 1);
        }
    }
    return deepest;
}

namespace detail {
namespace {

class TreeGrower {
public:
    TreeGrower(const BinnedMatrix& bins, const SplitCandidateTable& table, std::span<const Label> labels,
               std::span<const std::uint32_t> weights, std::size_t num_classes, std::size_t max_depth,
               std::size_t feature_subset, std::uint64_t seed)
        : bins_(bins),
          table_(table),
          labels_(labels),
          weights_(weights),
          classes_(num_classes),
          max_depth_(max_depth),
          subset_(feature_subset == 0 ? bins.cols : std::min(feature_subset, bins.cols)),
          rng_(seed),
          features_(bins.cols) {
        std::iota(features_.begin(), features_.end(), std::size_t{0});
        std::size_t widest = 0;
        for (const auto& t : table.thresholds) widest = std::max(widest, t.size());
        hist_.resize((widest + 1) * classes_);
    }

    std::vector<TreeNode> grow() {
        std::vector<std::uint32_t> rows;
        for (std::uint32_t i = 0; i < bins_.rows; ++i) {
            if (weights_[i] > 0) rows.push_back(i);
        }
        if (rows.empty()) throw ArgumentError("cannot grow a tree without training weight");
        grow_node(rows, 0, rows.size(), 0);
        return std::move(nodes_);
    }

private:
    struct Split {
        std::size_t feature = 0;
        std::size_t bin = 0;  // rows with bin <= this go left
        double score = -1.0;
    };

    std::uint32_t grow_node(std::vector<std::uint32_t>& rows, std::size_t begin, std::size_t end, std::size_t depth) {
        std::vector<std::uint64_t> counts(classes_, 0);
        std::uint64_t total = 0;
        for (std::size_t r = begin; r < end; ++r) {
            counts[labels_[rows[r]]] += weights_[rows[r]];
            total += weights_[rows[r]];
        }
        const auto majority = static_cast<Label>(std::max_element(counts.begin(), counts.end()) - counts.begin());
        const std::uint32_t id = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back(TreeNode{.label = majority});

        const bool pure = counts[majority] == total;
        if (depth >= max_depth_ || pure) return id;

        const Split best = find_split(rows, begin, end, counts, total);
        if (best.score < 0.0) return id;

        const auto column = bins_.column(best.feature);
        const auto mid_it = std::stable_partition(rows.begin() + static_cast<std::ptrdiff_t>(begin),
                                                  rows.begin() + static_cast<std::ptrdiff_t>(end),
                                                  [&](std::uint32_t row) { return column[row] <= best.bin; });
        const auto mid = static_cast<std::size_t>(mid_it - rows.begin());

        nodes_[id].feature = static_cast<std::int32_t>(best.feature);
        nodes_[id].threshold = table_.thresholds[best.feature][best.bin];
        const std::uint32_t left = grow_node(rows, begin, mid, depth + 1);
        const std::uint32_t right = grow_node(rows, mid, end, depth + 1);
        nodes_[id].left = left;
        nodes_[id].right = right;
        return id;
    }

    Split find_split(const std::vector<std::uint32_t>& rows, std::size_t begin, std::size_t end,
                     const std::vector<std::uint64_t>& counts, std::uint64_t total) {
        if (subset_ < features_.size()) {
            for (std::size_t k = 0; k < subset_; ++k) {
                const auto j = k + static_cast<std::size_t>(rng_.uniform_index(features_.size() - k));
                std::swap(features_[k], features_[j]);
            }
        }
        std::vector<std::size_t> chosen(features_.begin(), features_.begin() + static_cast<std::ptrdiff_t>(subset_));
        std::sort(chosen.begin(), chosen.end());

        const double w = static_cast<double>(total);
        double parent = 0.0;
        for (auto c : counts) parent += static_cast<double>(c) * static_cast<double>(c);
        parent /= w;

        Split best;
        std::vector<double> left(classes_);
        for (std::size_t f : chosen) {
            const std::size_t nthr = table_.thresholds[f].size();
            if (nthr == 0) continue;
            std::fill(hist_.begin(), hist_.begin() + static_cast<std::ptrdiff_t>((nthr + 1) * classes_), 0.0);
            const auto column = bins_.column(f);
            for (std::size_t r = begin; r < end; ++r) {
                const auto row = rows[r];
                hist_[column[row] * classes_ + labels_[row]] += weights_[row];
            }
            std::fill(left.begin(), left.end(), 0.0);
            double wl = 0.0;
            for (std::size_t b = 0; b < nthr; ++b) {
                for (std::size_t c = 0; c < classes_; ++c) {
                    left[c] += hist_[b * classes_ + c];
                    wl += hist_[b * classes_ + c];
                }
                const double wr = w - wl;
                if (wl <= 0.0 || wr <= 0.0) continue;
                double sl = 0.0, sr = 0.0;
                for (std::size_t c = 0; c < classes_; ++c) {
                    const double r = static_cast<double>(counts[c]) - left[c];
                    sl += left[c] * left[c];
                    sr += r * r;
                }
                // Weighted gini decrease, scaled by the node weight.
                const double score = sl / wl + sr / wr - parent;
                if (score > best.score) best = {f, b, score};
            }
        }
        if (best.score / w <= kMinGain) best.score = -1.0;
        return best;
    }

    static constexpr double kMinGain = 1e-12;

    const BinnedMatrix& bins_;
    const SplitCandidateTable& table_;
    std::span<const Label> labels_;
    std::span<const std::uint32_t> weights_;
    std::size_t classes_;
    std::size_t max_depth_;
    std::size_t subset_;
    Rng rng_;
    std::vector<std::size_t> features_;
    std::vector<double> hist_;
    std::vector<TreeNode> nodes_;
};

}  // namespace

DecisionTreeModel grow_tree(const BinnedMatrix& bins, const SplitCandidateTable& table,
                            std::span<const Label> labels, std::span<const std::uint32_t> weights,
                            std::size_t num_classes, std::size_t max_depth, std::size_t feature_subset,
                            std::uint64_t seed) {
    TreeGrower grower(bins, table, labels, weights, num_classes, max_depth, feature_subset, seed);
    return DecisionTreeModel(grower.grow(), bins.cols, num_classes);
}

}  // namespace detail

DecisionTreeModel train_decision_tree(const Dataset& train, const TreeParams& params) {
    if (train.empty()) throw ArgumentError("cannot train a decision tree on an empty dataset");
    const auto table = build_split_candidates(train, params.max_bins, derive_seed(params.seed, UINT64_MAX));
    const auto bins = bin_dataset(train, table);
    const std::vector<std::uint32_t> weights(train.size(), 1);
    return detail::grow_tree(bins, table, train.labels(), weights, train.num_classes(), params.max_depth,
                             params.feature_subset, derive_seed(params.seed, 0));
}

}  // namespace noisefilter
