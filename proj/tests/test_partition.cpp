#include <algorithm>
#include <set>

#include "doctest.h"
#include "noisefilter/errors.hpp"
#include "noisefilter/partition.hpp"
#include "noisefilter/synthetic.hpp"

using namespace noisefilter;

namespace {

Dataset ramp(std::size_t n) {
    std::vector<double> f(n);
    std::vector<Label> l(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = static_cast<double>(i);
        l[i] = static_cast<Label>(i % 3 == 0);
    }
    return Dataset(f, l, 1, 2);
}

}  // namespace

TEST_CASE("holdout sizes and disjointness") {
    const auto split = holdout_split(ramp(10), 0.8, 7);
    CHECK(split.train.size() == 8);
    CHECK(split.test.size() == 2);
    std::set<InstanceId> seen;
    for (auto id : split.train.origin_ids()) seen.insert(id);
    for (auto id : split.test.origin_ids()) CHECK(seen.insert(id).second);
    CHECK(seen.size() == 10);

    CHECK(holdout_split(ramp(1000), 0.7, 1).train.size() == 700);
    CHECK(holdout_split(ramp(5), 0.5, 1).train.size() == 3);  // 2.5 rounds up
}

TEST_CASE("holdout is deterministic and keeps row order") {
    const auto data = ramp(50);
    const auto a = holdout_split(data, 0.6, 42);
    const auto b = holdout_split(data, 0.6, 42);
    CHECK(a.train == b.train);
    CHECK(a.test == b.test);
    CHECK(std::is_sorted(a.train.origin_ids().begin(), a.train.origin_ids().end()));
    for (std::size_t i = 0; i < a.train.size(); ++i) {
        CHECK(a.train.row(i)[0] == static_cast<double>(a.train.origin_id(i)));
    }
    CHECK_FALSE(holdout_split(data, 0.6, 43).train == a.train);
}

TEST_CASE("holdout argument errors") {
    CHECK_THROWS_AS(holdout_split(ramp(10), 0.0, 1), ArgumentError);
    CHECK_THROWS_AS(holdout_split(ramp(10), 1.0, 1), ArgumentError);
    CHECK_THROWS_AS(holdout_split(ramp(1), 0.5, 1), ArgumentError);
}

TEST_CASE("k_fold examples") {
    const auto five = k_fold(ramp(10), 5, 3);
    REQUIRE(five.size() == 5);
    for (const auto& f : five) CHECK(f.test_ids.size() == 2);

    const auto four = k_fold(ramp(10), 4, 3);
    std::vector<std::size_t> sizes;
    for (const auto& f : four) sizes.push_back(f.test_ids.size());
    CHECK(sizes == std::vector<std::size_t>{3, 3, 2, 2});

    const auto again = k_fold(ramp(10), 4, 3);
    for (std::size_t f = 0; f < 4; ++f) CHECK(again[f].test_ids == four[f].test_ids);

    CHECK_THROWS_AS(k_fold(ramp(10), 1, 0), ArgumentError);
    CHECK_THROWS_AS(k_fold(ramp(3), 4, 0), ArgumentError);
}

TEST_CASE("k_fold tiling and complement (property)") {
    for (std::size_t n : {2u, 7u, 31u, 100u, 257u}) {
        for (std::size_t p : {2u, 3u, 4u, 5u, 10u}) {
            if (p > n) continue;
            for (std::uint64_t seed = 0; seed < 3; ++seed) {
                for (bool stratified : {false, true}) {
                    const auto folds = k_fold(ramp(n), p, seed, {.stratified = stratified});
                    std::vector<int> hits(n, 0);
                    std::size_t lo = n, hi = 0;
                    for (const auto& f : folds) {
                        CHECK(f.train_ids.size() + f.test_ids.size() == n);
                        for (auto id : f.test_ids) ++hits[id];
                        std::vector<InstanceId> all;
                        std::merge(f.train_ids.begin(), f.train_ids.end(), f.test_ids.begin(), f.test_ids.end(),
                                   std::back_inserter(all));
                        for (std::size_t i = 0; i < n; ++i) REQUIRE(all[i] == i);
                        lo = std::min(lo, f.test_ids.size());
                        hi = std::max(hi, f.test_ids.size());
                    }
                    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
                    CHECK(hi - lo <= 1);
                }
            }
        }
    }
}

TEST_CASE("stratified folds balance classes") {
    const auto data = ramp(300);  // 100 of class 1, 200 of class 0
    const auto folds = k_fold(data, 4, 9, {.stratified = true});
    for (const auto& f : folds) {
        std::size_t ones = 0;
        for (auto id : f.test_ids) ones += data.label(id);
        CHECK(ones >= 24);
        CHECK(ones <= 26);
    }
}
