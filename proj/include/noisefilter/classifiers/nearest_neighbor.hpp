#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "noisefilter/dataset.hpp"
#include "noisefilter/executor.hpp"

namespace noisefilter {

/// Exact euclidean k-nearest-neighbor classifier. Holds a non-owning
/// reference to its training set, which must outlive the model.
class NearestNeighborModel {
public:
    explicit NearestNeighborModel(const Dataset& train, std::size_t k = 1);

    const Dataset& train() const noexcept { return train_.get(); }
    std::size_t k() const noexcept { return k_; }

private:
    std::reference_wrapper<const Dataset> train_;
    std::size_t k_;
};

/// For each batch row, the label of the nearest training row by squared
/// euclidean distance (ties to the lowest training id). With `exclude_self`,
/// the training row sharing the query's origin id is skipped. For k > 1 the
/// k nearest vote, ties to the lowest class index. Queries are processed in
/// fixed blocks in parallel.
std::vector<Label> predict_knn(const NearestNeighborModel& model, const Dataset& batch, bool exclude_self,
                               const Executor& exec = Executor{});

/// predict_knn with a model whose k must be 1.
std::vector<Label> predict_1nn(const NearestNeighborModel& model, const Dataset& batch, bool exclude_self,
                               const Executor& exec = Executor{});

}  // namespace noisefilter
