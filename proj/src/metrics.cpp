#include "noisefilter/metrics.hpp"

#include <algorithm>
#include <iterator>

#include "noisefilter/errors.hpp"

namespace noisefilter {
namespace {

std::size_t overlap(const std::vector<InstanceId>& a, const std::vector<InstanceId>& b) {
    std::vector<InstanceId> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    return common.size();
}

}  // namespace

double accuracy(std::span<const Label> predicted, std::span<const Label> truth) {
    if (predicted.size() != truth.size()) throw ArgumentError("accuracy needs equal-length label vectors");
    if (predicted.empty()) throw ArgumentError("accuracy of an empty prediction set is undefined");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) hits += predicted[i] == truth[i] ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

double noise_recall(const FilterReport& report, const NoiseLedger& ledger) {
    if (ledger.flipped_ids.empty()) throw UndefinedMetricError("noise recall needs at least one flipped instance");
    return static_cast<double>(overlap(report.removed_ids, ledger.flipped_ids)) /
           static_cast<double>(ledger.flipped_ids.size());
}

double noise_precision(const FilterReport& report, const NoiseLedger& ledger) {
    if (report.removed_ids.empty()) throw UndefinedMetricError("noise precision needs at least one removal");
    return static_cast<double>(overlap(report.removed_ids, ledger.flipped_ids)) /
           static_cast<double>(report.removed_ids.size());
}

}  // namespace noisefilter
