#include "noisefilter/partition.hpp"

#include <algorithm>

#include "noisefilter/errors.hpp"
#include "noisefilter/random.hpp"

namespace noisefilter {

HoldoutSplit holdout_split(const Dataset& data, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
        throw ArgumentError("train_fraction must lie in (0, 1)");
    }
    const std::size_t n = data.size();
    if (n < 2) throw ArgumentError("hold-out split needs at least 2 instances");

    const std::size_t train_size = std::clamp<std::size_t>(round_half_up(train_fraction * static_cast<double>(n)), 1, n - 1);
    Rng rng(seed);
    auto perm = rng.permutation(n);
    std::vector<InstanceId> train_ids(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(train_size));
    std::vector<InstanceId> test_ids(perm.begin() + static_cast<std::ptrdiff_t>(train_size), perm.end());
    std::sort(train_ids.begin(), train_ids.end());
    std::sort(test_ids.begin(), test_ids.end());

    const Dataset base = data.rebased();
    return {base.subset(train_ids), base.subset(test_ids), seed, train_fraction};
}

std::vector<FoldPair> k_fold(const Dataset& data, std::size_t partitions, std::uint64_t seed,
                             KFoldOptions options) {
    const std::size_t n = data.size();
    if (partitions < 2) throw ArgumentError("k_fold needs at least 2 partitions");
    if (partitions > n) throw ArgumentError("k_fold needs at least as many instances as partitions");

    Rng rng(seed);
    std::vector<std::size_t> fold_of(n);
    if (!options.stratified) {
        const auto perm = rng.permutation(n);
        const std::size_t base = n / partitions;
        const std::size_t extra = n % partitions;
        std::size_t pos = 0;
        for (std::size_t f = 0; f < partitions; ++f) {
            const std::size_t len = base + (f < extra ? 1 : 0);
            for (std::size_t k = 0; k < len; ++k) fold_of[perm[pos++]] = f;
        }
    } else {
        std::vector<std::vector<InstanceId>> by_class(data.num_classes());
        for (InstanceId i = 0; i < n; ++i) by_class[data.label(i)].push_back(i);
        std::size_t pos = 0;
        for (auto& members : by_class) {
            rng.shuffle(std::span<InstanceId>(members));
            for (InstanceId id : members) fold_of[id] = pos++ % partitions;
        }
    }

    std::vector<FoldPair> folds(partitions);
    for (std::size_t f = 0; f < partitions; ++f) folds[f].fold_index = f;
    for (InstanceId i = 0; i < n; ++i) {
        for (std::size_t f = 0; f < partitions; ++f) {
            (f == fold_of[i] ? folds[f].test_ids : folds[f].train_ids).push_back(i);
        }
    }
    return folds;
}

}  // namespace noisefilter
