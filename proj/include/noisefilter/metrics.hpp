#pragma once

#include <span>

#include "noisefilter/dataset.hpp"
#include "noisefilter/filters.hpp"
#include "noisefilter/noise.hpp"

namespace noisefilter {

/// Fraction of positions where predicted equals truth.
double accuracy(std::span<const Label> predicted, std::span<const Label> truth);

/// |removed ∩ flipped| / |flipped|. UndefinedMetricError on an empty ledger.
double noise_recall(const FilterReport& report, const NoiseLedger& ledger);

/// |removed ∩ flipped| / |removed|. UndefinedMetricError when nothing was removed.
double noise_precision(const FilterReport& report, const NoiseLedger& ledger);

}  // namespace noisefilter
