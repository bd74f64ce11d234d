#include "noisefilter/classifiers/nearest_neighbor.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "noisefilter/errors.hpp"

namespace noisefilter {
namespace {

constexpr std::size_t kQueryBlock = 64;
constexpr std::size_t kTrainBlock = 512;

}  // namespace

NearestNeighborModel::NearestNeighborModel(const Dataset& train, std::size_t k) : train_(train), k_(k) {
    if (k_ < 1 || k_ > train.size()) throw ArgumentError("k must lie in [1, |train|]");
}

std::vector<Label> predict_knn(const NearestNeighborModel& model, const Dataset& batch, bool exclude_self,
                               const Executor& exec) {
    const Dataset& train = model.train();
    const std::size_t k = model.k();
    if (!batch.empty() && batch.num_features() != train.num_features()) {
        throw ArgumentError("batch feature arity does not match the training set");
    }
    if (exclude_self && train.size() < k + 1) {
        throw ArgumentError("exclude_self needs more training instances than k");
    }
    const std::size_t d = train.num_features();
    const std::size_t n_train = train.size();
    const double* ref = train.feature_matrix().data();

    std::vector<Label> out(batch.size());
    exec.for_each_block(batch.size(), kQueryBlock, [&](std::size_t qbegin, std::size_t qend) {
        using Neighbor = std::pair<double, std::size_t>;  // (squared distance, train id)
        const std::size_t qn = qend - qbegin;
        // Per query, the k best seen so far in ascending (distance, id) order.
        std::vector<std::vector<Neighbor>> best(qn);
        for (auto& b : best) b.reserve(k + 1);

        for (std::size_t tbegin = 0; tbegin < n_train; tbegin += kTrainBlock) {
            const std::size_t tend = std::min(n_train, tbegin + kTrainBlock);
            for (std::size_t q = 0; q < qn; ++q) {
                const std::size_t qi = qbegin + q;
                const double* x = batch.feature_matrix().data() + qi * d;
                const InstanceId self = batch.origin_id(qi);
                auto& heap = best[q];
                for (std::size_t t = tbegin; t < tend; ++t) {
                    if (exclude_self && train.origin_id(t) == self) continue;
                    const double* y = ref + t * d;
                    double dist = 0.0;
                    for (std::size_t j = 0; j < d; ++j) {
                        const double diff = x[j] - y[j];
                        dist += diff * diff;
                    }
                    if (heap.size() == k && !(dist < heap.back().first)) continue;
                    // Training ids arrive in ascending order, so inserting after
                    // equal distances keeps ties resolved to the lowest id.
                    const Neighbor nb{dist, t};
                    const auto pos = std::upper_bound(heap.begin(), heap.end(), nb);
                    heap.insert(pos, nb);
                    if (heap.size() > k) heap.pop_back();
                }
            }
        }

        std::vector<std::size_t> tally(train.num_classes());
        for (std::size_t q = 0; q < qn; ++q) {
            const auto& heap = best[q];
            if (heap.empty()) throw ArgumentError("no eligible neighbor for query " + std::to_string(qbegin + q));
            if (k == 1) {
                out[qbegin + q] = train.label(heap.front().second);
                continue;
            }
            std::fill(tally.begin(), tally.end(), 0);
            for (const auto& [dist, id] : heap) ++tally[train.label(id)];
            out[qbegin + q] = static_cast<Label>(std::max_element(tally.begin(), tally.end()) - tally.begin());
        }
    });
    return out;
}

std::vector<Label> predict_1nn(const NearestNeighborModel& model, const Dataset& batch, bool exclude_self,
                               const Executor& exec) {
    if (model.k() != 1) throw ArgumentError("predict_1nn needs a model with k = 1");
    if (exclude_self && model.train().size() == 1) {
        throw ArgumentError("exclude_self with a single training instance leaves no neighbor");
    }
    return predict_knn(model, batch, exclude_self, exec);
}

}  // namespace noisefilter
