#include "noisefilter/classifiers/random_forest.hpp"

#include <algorithm>
#include <cmath>

#include "noisefilter/errors.hpp"
#include "noisefilter/random.hpp"

namespace noisefilter {

std::size_t auto_feature_subset(std::size_t num_features, std::size_t n_trees) {
    if (n_trees <= 1) return num_features;
    auto m = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(num_features))));
    // Guard against sqrt rounding on perfect squares.
    while (m > 1 && (m - 1) * (m - 1) >= num_features) --m;
    while (m * m < num_features) ++m;
    return std::clamp<std::size_t>(m, 1, num_features);
}

RandomForestModel::RandomForestModel(std::vector<DecisionTreeModel> trees, std::vector<std::uint64_t> tree_seeds,
                                     std::size_t feature_subset, std::size_t num_features, std::size_t num_classes)
    : trees_(std::move(trees)),
      tree_seeds_(std::move(tree_seeds)),
      feature_subset_(feature_subset),
      num_features_(num_features),
      num_classes_(num_classes) {
    if (trees_.empty()) throw ArgumentError("forest needs at least one tree");
    if (tree_seeds_.size() != trees_.size()) throw ArgumentError("one seed per tree required");
    if (feature_subset_ < 1 || feature_subset_ > num_features_) throw ArgumentError("feature subset out of range");
}

Label majority_vote(std::span<const Label> votes, std::size_t num_classes) {
    std::vector<std::size_t> tally(num_classes, 0);
    for (Label v : votes) ++tally[v];
    return static_cast<Label>(std::max_element(tally.begin(), tally.end()) - tally.begin());
}

Label RandomForestModel::predict(std::span<const double> features) const {
    std::vector<std::size_t> tally(num_classes_, 0);
    for (const auto& tree : trees_) ++tally[tree.predict(features)];
    return static_cast<Label>(std::max_element(tally.begin(), tally.end()) - tally.begin());
}

std::vector<Label> RandomForestModel::predict(const Dataset& batch, const Executor& exec) const {
    if (!batch.empty() && batch.num_features() != num_features_) {
        throw ArgumentError("batch feature arity does not match the forest");
    }
    std::vector<Label> out(batch.size());
    exec.for_each_block(batch.size(), 256, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) out[i] = predict(batch.row(i));
    });
    return out;
}

RandomForestModel train_random_forest(const Dataset& train, const ForestParams& params, const Executor& exec) {
    if (train.empty()) throw ArgumentError("cannot train a random forest on an empty dataset");
    if (params.n_trees < 1) throw ArgumentError("n_trees must be at least 1");

    const auto table = build_split_candidates(train, params.max_bins, derive_seed(params.seed, UINT64_MAX));
    const auto bins = bin_dataset(train, table);
    const std::size_t subset = auto_feature_subset(train.num_features(), params.n_trees);
    const std::size_t n = train.size();

    std::vector<DecisionTreeModel> trees(params.n_trees);
    std::vector<std::uint64_t> seeds(params.n_trees);
    exec.for_each_index(params.n_trees, [&](std::size_t t) {
        seeds[t] = derive_seed(params.seed, t);
        std::vector<std::uint32_t> weights(n, 1);
        std::uint64_t grow_seed = seeds[t];
        if (params.bootstrap) {
            Rng rng(seeds[t]);
            std::fill(weights.begin(), weights.end(), 0);
            for (std::size_t k = 0; k < n; ++k) ++weights[rng.uniform_index(n)];
            grow_seed = rng.next();
        }
        trees[t] = detail::grow_tree(bins, table, train.labels(), weights, train.num_classes(), params.max_depth,
                                     subset, grow_seed);
    });
    return RandomForestModel(std::move(trees), std::move(seeds), subset, train.num_features(),
                             train.num_classes());
}

}  // namespace noisefilter
