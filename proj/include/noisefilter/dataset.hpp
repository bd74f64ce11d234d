#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace noisefilter {

using Label = std::uint32_t;
using InstanceId = std::size_t;

/// Read-only view of one row of a Dataset.
struct InstanceView {
    InstanceId id;
    Label label;
    std::span<const double> features;
};

/// Immutable collection of labeled dense-feature instances.
///
/// Instance ids are the row ordinals 0..n-1. Each row also carries an origin
/// id: its id in the dataset this one was derived from (identity for a
/// freshly loaded dataset). Subsets keep the origin ids of their root, so
/// fold parts, hold-out parts and filter outputs can always be traced back.
class Dataset {
public:
    Dataset() = default;

    /// Validates every invariant: num_classes >= 2, num_features >= 1,
    /// features.size() == labels.size() * num_features, labels < num_classes,
    /// all features finite. `label_names` may be empty (names become "0",
    /// "1", ...); otherwise it must hold exactly num_classes entries.
    Dataset(std::vector<double> features, std::vector<Label> labels, std::size_t num_features,
            std::size_t num_classes, std::vector<std::string> label_names = {});

    std::size_t size() const noexcept { return labels_.size(); }
    bool empty() const noexcept { return labels_.empty(); }
    std::size_t num_features() const noexcept { return num_features_; }
    std::size_t num_classes() const noexcept { return num_classes_; }

    InstanceView instance(InstanceId id) const {
        return {id, labels_[id], row(id)};
    }
    std::span<const double> row(InstanceId id) const {
        return {features_.data() + id * num_features_, num_features_};
    }
    Label label(InstanceId id) const { return labels_[id]; }
    InstanceId origin_id(InstanceId id) const { return origin_ids_[id]; }

    std::span<const Label> labels() const noexcept { return labels_; }
    std::span<const double> feature_matrix() const noexcept { return features_; }
    std::span<const InstanceId> origin_ids() const noexcept { return origin_ids_; }
    const std::vector<std::string>& label_names() const noexcept { return label_names_; }

    /// Rows `ids` (in the given order) as a new dataset. Origin ids are
    /// inherited from this dataset.
    Dataset subset(std::span<const InstanceId> ids) const;

    /// Same features and metadata with labels replaced.
    Dataset with_labels(std::vector<Label> labels) const;

    /// Rebases origin ids so that they equal the row ids.
    Dataset rebased() const;

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::vector<double> features_;
    std::vector<Label> labels_;
    std::vector<InstanceId> origin_ids_;
    std::size_t num_features_ = 1;
    std::size_t num_classes_ = 2;
    std::vector<std::string> label_names_;
};

/// Per-class instance counts; sums to data.size().
std::vector<std::size_t> class_histogram(const Dataset& data);

/// FNV-1a digest over labels and the exact bit patterns of all features.
std::uint64_t content_digest(const Dataset& data);

}  // namespace noisefilter
