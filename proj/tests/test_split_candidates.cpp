#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "noisefilter/classifiers/split_candidates.hpp"
#include "noisefilter/errors.hpp"
#include "noisefilter/random.hpp"
#include "test_helpers.hpp"

using namespace noisefilter;

TEST_CASE("gini impurity examples") {
    const std::vector<std::size_t> pure{10, 0}, even{5, 5}, skew{3, 1}, empty{0, 0};
    CHECK(gini_impurity(pure) == doctest::Approx(0.0));
    CHECK(gini_impurity(even) == doctest::Approx(0.5));
    CHECK(gini_impurity(skew) == doctest::Approx(0.375));
    CHECK_THROWS_AS(gini_impurity(empty), ArgumentError);
}

TEST_CASE("gini impurity is maximal at uniform counts and zero iff pure (property)") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 2 + rng.uniform_index(5);
        std::vector<std::size_t> counts(k);
        for (auto& c : counts) c = rng.uniform_index(20);
        if (std::accumulate(counts.begin(), counts.end(), std::size_t{0}) == 0) counts[0] = 1;
        const double g = gini_impurity(counts);
        CHECK(g >= 0.0);
        CHECK(g <= 1.0 - 1.0 / static_cast<double>(k) + 1e-12);
        const bool pure = std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) == 1;
        CHECK((g == doctest::Approx(0.0)) == pure);
        const std::vector<std::size_t> uniform(k, 7);
        CHECK(gini_impurity(uniform) == doctest::Approx(1.0 - 1.0 / static_cast<double>(k)));
    }
}

TEST_CASE("few distinct values use midpoints; constant features get none") {
    const auto data = testing::make_dataset({{1, 5}, {2, 5}, {3, 5}, {2, 5}}, {0, 1, 0, 1});
    const auto table = build_split_candidates(data, 32);
    CHECK(table.thresholds[0] == std::vector<double>{1.5, 2.5});
    CHECK(table.thresholds[1].empty());
    CHECK_THROWS_AS(build_split_candidates(data, 1), ArgumentError);
}

TEST_CASE("equal-frequency thresholds match exact sample quantiles") {
    Rng rng(11);
    std::vector<double> values(1000);
    for (auto& v : values) v = rng.uniform();
    const Dataset data(values, std::vector<Label>(1000, 0), 1, 2);
    const auto table = build_split_candidates(data, 4);
    REQUIRE(table.thresholds[0].size() == 3);

    // Oracle: empirical CDF at each threshold sits at the j/4 quantile.
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t j = 1; j <= 3; ++j) {
        const double t = table.thresholds[0][j - 1];
        const auto below = static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin());
        CHECK(below / 1000.0 >= static_cast<double>(j) / 4.0);
        CHECK(below / 1000.0 <= static_cast<double>(j) / 4.0 + 1.0 / 1000.0);
        CHECK(t == doctest::Approx(static_cast<double>(j) / 4.0).epsilon(0.08));
    }
}

TEST_CASE("thresholds ascend and respect the bin cap (property)") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        const std::size_t n = 50 + rng.uniform_index(3000);
        const std::size_t bins = 2 + rng.uniform_index(40);
        std::vector<double> f(n * 2);
        for (std::size_t i = 0; i < n; ++i) {
            f[2 * i] = rng.normal();
            f[2 * i + 1] = static_cast<double>(rng.uniform_index(5));
        }
        const Dataset data(f, std::vector<Label>(n, 0), 2, 2);
        const auto table = build_split_candidates(data, bins, seed);
        for (const auto& t : table.thresholds) {
            CHECK(t.size() <= bins - 1);
            CHECK(std::adjacent_find(t.begin(), t.end(), std::greater_equal<>()) == t.end());
        }
        const auto binned = bin_dataset(data, table);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t feat = 0; feat < 2; ++feat) {
                const auto b = binned.column(feat)[i];
                const auto& t = table.thresholds[feat];
                const double v = data.row(i)[feat];
                for (std::size_t j = 0; j < t.size(); ++j) REQUIRE((v <= t[j]) == (b <= j));
            }
        }
    }
}

TEST_CASE("binning source is subsampled above the cap") {
    const std::size_t bins = 2;
    const std::size_t n = bins * kBinningRowsPerBin * 3;
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = static_cast<double>(i);
    const Dataset data(f, std::vector<Label>(n, 0), 1, 2);
    const auto a = build_split_candidates(data, bins, 1);
    const auto b = build_split_candidates(data, bins, 1);
    const auto c = build_split_candidates(data, bins, 2);
    REQUIRE(a.thresholds[0].size() == 1);
    CHECK(a.thresholds == b.thresholds);
    CHECK(a.thresholds != c.thresholds);
    CHECK(a.thresholds[0][0] == doctest::Approx(static_cast<double>(n) / 2).epsilon(0.05));
}
