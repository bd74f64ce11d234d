#include "noisefilter/dataset.hpp"

#include <bit>
#include <cmath>
#include <numeric>

#include "noisefilter/errors.hpp"

namespace noisefilter {

Dataset::Dataset(std::vector<double> features, std::vector<Label> labels, std::size_t num_features,
                 std::size_t num_classes, std::vector<std::string> label_names)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      num_features_(num_features),
      num_classes_(num_classes),
      label_names_(std::move(label_names)) {
    if (num_classes_ < 2) throw ArgumentError("dataset needs at least 2 classes");
    if (num_features_ < 1) throw ArgumentError("dataset needs at least 1 feature");
    if (features_.size() != labels_.size() * num_features_) {
        throw ArgumentError("feature matrix size does not match instance count");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] >= num_classes_) {
            throw ArgumentError("instance " + std::to_string(i) + " has label " +
                                std::to_string(labels_[i]) + " >= num_classes");
        }
    }
    for (std::size_t i = 0; i < features_.size(); ++i) {
        if (!std::isfinite(features_[i])) {
            throw ArgumentError("instance " + std::to_string(i / num_features_) +
                                " has a non-finite feature value");
        }
    }
    if (label_names_.empty()) {
        for (std::size_t c = 0; c < num_classes_; ++c) label_names_.push_back(std::to_string(c));
    } else if (label_names_.size() != num_classes_) {
        throw ArgumentError("label name table size does not match num_classes");
    }
    origin_ids_.resize(labels_.size());
    std::iota(origin_ids_.begin(), origin_ids_.end(), InstanceId{0});
}

Dataset Dataset::subset(std::span<const InstanceId> ids) const {
    Dataset out;
    out.num_features_ = num_features_;
    out.num_classes_ = num_classes_;
    out.label_names_ = label_names_;
    out.features_.reserve(ids.size() * num_features_);
    out.labels_.reserve(ids.size());
    out.origin_ids_.reserve(ids.size());
    for (InstanceId id : ids) {
        if (id >= size()) throw ArgumentError("subset id out of range");
        const auto r = row(id);
        out.features_.insert(out.features_.end(), r.begin(), r.end());
        out.labels_.push_back(labels_[id]);
        out.origin_ids_.push_back(origin_ids_[id]);
    }
    return out;
}

Dataset Dataset::with_labels(std::vector<Label> labels) const {
    if (labels.size() != labels_.size()) throw ArgumentError("label count mismatch");
    for (Label l : labels) {
        if (l >= num_classes_) throw ArgumentError("label out of range");
    }
    Dataset out = *this;
    out.labels_ = std::move(labels);
    return out;
}

Dataset Dataset::rebased() const {
    Dataset out = *this;
    std::iota(out.origin_ids_.begin(), out.origin_ids_.end(), InstanceId{0});
    return out;
}

std::vector<std::size_t> class_histogram(const Dataset& data) {
    std::vector<std::size_t> counts(data.num_classes(), 0);
    for (Label l : data.labels()) ++counts[l];
    return counts;
}

std::uint64_t content_digest(const Dataset& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    mix(data.size());
    mix(data.num_features());
    mix(data.num_classes());
    for (Label l : data.labels()) mix(l);
    for (double v : data.feature_matrix()) mix(std::bit_cast<std::uint64_t>(v));
    return h;
}

}  // namespace noisefilter
