#include "noisefilter/classifiers/split_candidates.hpp"

#include <numeric>

#include "noisefilter/errors.hpp"
#include "noisefilter/random.hpp"

namespace noisefilter {

double gini_impurity(std::span<const std::size_t> class_counts) {
    const double total = static_cast<double>(std::accumulate(class_counts.begin(), class_counts.end(), std::size_t{0}));
    if (total == 0.0) throw ArgumentError("gini impurity of an empty node is undefined");
    double sum_sq = 0.0;
    for (std::size_t c : class_counts) {
        const double p = static_cast<double>(c) / total;
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

SplitCandidateTable build_split_candidates(const Dataset& train, std::size_t max_bins, std::uint64_t seed) {
    if (max_bins < 2) throw ArgumentError("max_bins must be at least 2");
    if (max_bins > 65536) throw ArgumentError("max_bins must be at most 65536");

    const std::size_t n = train.size();
    const std::size_t cap = max_bins * kBinningRowsPerBin;
    std::vector<InstanceId> sample;
    if (n <= cap) {
        sample.resize(n);
        std::iota(sample.begin(), sample.end(), InstanceId{0});
    } else {
        Rng rng(seed);
        auto perm = rng.permutation(n);
        sample.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(cap));
        std::sort(sample.begin(), sample.end());
    }

    SplitCandidateTable table;
    table.thresholds.resize(train.num_features());
    std::vector<double> values(sample.size());
    for (std::size_t f = 0; f < train.num_features(); ++f) {
        for (std::size_t i = 0; i < sample.size(); ++i) values[i] = train.row(sample[i])[f];
        std::sort(values.begin(), values.end());
        std::vector<double> distinct;
        std::unique_copy(values.begin(), values.end(), std::back_inserter(distinct));

        auto& out = table.thresholds[f];
        if (distinct.size() <= 1) continue;
        if (distinct.size() <= max_bins) {
            for (std::size_t k = 0; k + 1 < distinct.size(); ++k) {
                const double mid = distinct[k] + (distinct[k + 1] - distinct[k]) / 2.0;
                out.push_back(mid < distinct[k + 1] ? mid : distinct[k]);
            }
            continue;
        }
        const std::size_t count = values.size();
        for (std::size_t j = 1; j < max_bins; ++j) {
            // Smallest index whose prefix holds at least j/max_bins of the sample.
            const std::size_t idx = (j * count + max_bins - 1) / max_bins - 1;
            const double t = values[idx];
            if (t >= distinct.back()) break;
            if (out.empty() || t > out.back()) out.push_back(t);
        }
    }
    return table;
}

BinnedMatrix bin_dataset(const Dataset& data, const SplitCandidateTable& table) {
    if (table.num_features() != data.num_features()) throw ArgumentError("binning table arity mismatch");
    BinnedMatrix m;
    m.rows = data.size();
    m.cols = data.num_features();
    m.bins.resize(m.rows * m.cols);
    for (std::size_t i = 0; i < m.rows; ++i) {
        const auto r = data.row(i);
        for (std::size_t f = 0; f < m.cols; ++f) m.bins[f * m.rows + i] = table.bin_of(f, r[f]);
    }
    return m;
}

}  // namespace noisefilter
