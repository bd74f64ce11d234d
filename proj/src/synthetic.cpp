#include "noisefilter/synthetic.hpp"

#include <cmath>

#include "noisefilter/errors.hpp"
#include "noisefilter/random.hpp"

namespace noisefilter::synthetic {

Dataset make_blobs(const BlobSpec& spec) {
    if (spec.num_features < 1) throw ArgumentError("blobs need at least one feature");
    Rng rng(spec.seed);
    const double offset = spec.separation / (2.0 * std::sqrt(static_cast<double>(spec.num_features)));
    std::vector<double> features;
    features.reserve(spec.n * spec.num_features);
    std::vector<Label> labels(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        labels[i] = static_cast<Label>(i % 2);
        const double mean = labels[i] == 0 ? -offset : offset;
        for (std::size_t j = 0; j < spec.num_features; ++j) features.push_back(mean + rng.normal());
    }
    return Dataset(std::move(features), std::move(labels), spec.num_features, 2);
}

BlobSpec separable_blobs(std::size_t n, std::uint64_t seed) { return BlobSpec{n, 8, 8.0, seed}; }

BlobSpec overlapping_blobs(std::size_t n, std::uint64_t seed) { return BlobSpec{n, 8, 2.0, seed}; }

Dataset make_xor_grid(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> features;
    features.reserve(n * 2);
    std::vector<Label> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.uniform();
        const double y = rng.uniform();
        features.push_back(x);
        features.push_back(y);
        labels[i] = static_cast<Label>((x > 0.5) != (y > 0.5));
    }
    return Dataset(std::move(features), std::move(labels), 2, 2);
}

}  // namespace noisefilter::synthetic
