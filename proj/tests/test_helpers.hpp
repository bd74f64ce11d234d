#pragma once

#include <vector>

#include "noisefilter/dataset.hpp"

namespace testing {

/// Dataset from rows of features plus labels.
inline noisefilter::Dataset make_dataset(const std::vector<std::vector<double>>& rows,
                                         const std::vector<noisefilter::Label>& labels,
                                         std::size_t num_classes = 2) {
    std::vector<double> flat;
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return noisefilter::Dataset(flat, labels, rows.empty() ? 1 : rows.front().size(), num_classes);
}

}  // namespace testing
