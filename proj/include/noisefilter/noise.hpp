#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "noisefilter/dataset.hpp"

namespace noisefilter {

/// Ground truth of an injection: which ids were flipped and from what.
struct NoiseLedger {
    std::vector<InstanceId> flipped_ids;      ///< ascending
    std::map<InstanceId, Label> original_labels;
    double level = 0.0;
    std::uint64_t seed = 0;
    std::size_t dataset_size = 0;

    bool empty() const noexcept { return flipped_ids.empty(); }
    friend bool operator==(const NoiseLedger&, const NoiseLedger&) = default;
};

struct NoisyDataset {
    Dataset data;
    NoiseLedger ledger;
};

/// Uniform class noise: round-half-up(level * n) ids chosen without
/// replacement; each receives a label drawn uniformly from the other
/// num_classes - 1 classes. Features and origin ids are untouched.
NoisyDataset inject_uniform_class_noise(const Dataset& data, double level, std::uint64_t seed);

/// Puts the ledger's original labels back.
Dataset restore_labels(const Dataset& noisy, const NoiseLedger& ledger);

std::string ledger_to_json(const NoiseLedger& ledger);
NoiseLedger ledger_from_json(const std::string& json_text);

}  // namespace noisefilter
