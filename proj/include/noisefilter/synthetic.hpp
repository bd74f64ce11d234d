#pragma once

#include <cstddef>
#include <cstdint>

#include "noisefilter/dataset.hpp"

namespace noisefilter::synthetic {

/// Two isotropic unit-variance Gaussian classes whose means lie
/// `separation` standard deviations apart along the all-ones diagonal.
/// Labels alternate 0,1,0,1,...
struct BlobSpec {
    std::size_t n = 5000;
    std::size_t num_features = 8;
    double separation = 8.0;
    std::uint64_t seed = 1;
};

Dataset make_blobs(const BlobSpec& spec);

/// Reference suite members.
BlobSpec separable_blobs(std::size_t n, std::uint64_t seed);
BlobSpec overlapping_blobs(std::size_t n, std::uint64_t seed);

/// Uniform points in the unit square labelled by which diagonal quadrant
/// pair they fall in (XOR of x > 0.5 and y > 0.5).
Dataset make_xor_grid(std::size_t n, std::uint64_t seed);

}  // namespace noisefilter::synthetic
