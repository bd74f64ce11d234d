#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "noisefilter/dataset.hpp"

namespace noisefilter {

/// Binning source is capped at this many rows per max_bins unit.
inline constexpr std::size_t kBinningRowsPerBin = 10 * 100;

/// Per-feature ascending split thresholds. A value v falls in bin
/// `#thresholds < v`, so "v <= thresholds[j]" is exactly "bin(v) <= j".
struct SplitCandidateTable {
    std::vector<std::vector<double>> thresholds;

    std::size_t num_features() const noexcept { return thresholds.size(); }

    std::uint16_t bin_of(std::size_t feature, double value) const {
        const auto& t = thresholds[feature];
        return static_cast<std::uint16_t>(std::lower_bound(t.begin(), t.end(), value) - t.begin());
    }
};

/// Impurity 1 - sum (c_k / total)^2. Throws ArgumentError when total is 0.
double gini_impurity(std::span<const std::size_t> class_counts);

/// Equal-frequency thresholds on a uniform subsample of
/// min(n, max_bins * kBinningRowsPerBin) rows. Features with at most
/// max_bins distinct sampled values get midpoints between consecutive
/// distinct values instead. Constant features get no thresholds.
SplitCandidateTable build_split_candidates(const Dataset& train, std::size_t max_bins,
                                           std::uint64_t seed = 0);

/// Column-major bin indices of a dataset under a candidate table.
struct BinnedMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint16_t> bins;  // bins[feature * rows + row]

    std::span<const std::uint16_t> column(std::size_t feature) const {
        return {bins.data() + feature * rows, rows};
    }
};

BinnedMatrix bin_dataset(const Dataset& data, const SplitCandidateTable& table);

}  // namespace noisefilter
