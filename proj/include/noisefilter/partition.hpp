#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "noisefilter/dataset.hpp"

namespace noisefilter {

/// Train/test hold-out split. Both parts have dense ids; their origin ids
/// map back to the split dataset's ids.
struct HoldoutSplit {
    Dataset train;
    Dataset test;
    std::uint64_t seed = 0;
    double train_fraction = 0.5;
};

/// Seeded uniform split; |train| = round-half-up(train_fraction * n), clamped
/// to [1, n-1]. Rows keep their relative order within each part.
HoldoutSplit holdout_split(const Dataset& data, double train_fraction, std::uint64_t seed);

/// One fold of a k-fold partitioning, as ids into the partitioned dataset.
/// Both id lists are ascending.
struct FoldPair {
    std::size_t fold_index = 0;
    std::vector<InstanceId> train_ids;
    std::vector<InstanceId> test_ids;
};

struct KFoldOptions {
    bool stratified = false;
};

/// Seeded permutation of 0..n-1 cut into `partitions` contiguous chunks; the
/// first n % partitions chunks are one longer. Stratified mode permutes each
/// class separately, concatenates them and deals round-robin, which keeps
/// the same size balance.
std::vector<FoldPair> k_fold(const Dataset& data, std::size_t partitions, std::uint64_t seed,
                             KFoldOptions options = {});

}  // namespace noisefilter
