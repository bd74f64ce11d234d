#include "doctest.h"
#include "noisefilter/classifiers/random_forest.hpp"
#include "noisefilter/errors.hpp"
#include "noisefilter/metrics.hpp"
#include "noisefilter/random.hpp"
#include "noisefilter/synthetic.hpp"

using namespace noisefilter;

namespace {

Dataset probes(std::size_t n, std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> f(n * d);
    for (auto& v : f) v = 3.0 * rng.normal();
    return Dataset(f, std::vector<Label>(n, 0), d, 2);
}

}  // namespace

TEST_CASE("auto feature subset") {
    CHECK(auto_feature_subset(18, 100) == 5);
    CHECK(auto_feature_subset(18, 1) == 18);
    CHECK(auto_feature_subset(16, 10) == 4);
    CHECK(auto_feature_subset(17, 10) == 5);
    CHECK(auto_feature_subset(1, 10) == 1);
    CHECK(auto_feature_subset(2000, 100) == 45);
    CHECK(auto_feature_subset(631, 100) == 26);
}

TEST_CASE("majority vote ties go to the lowest class") {
    CHECK(majority_vote(std::vector<Label>{0, 0, 1}, 2) == 0);
    CHECK(majority_vote(std::vector<Label>{0, 1}, 2) == 0);
    CHECK(majority_vote(std::vector<Label>{2, 1, 1, 2}, 3) == 1);
    CHECK(majority_vote(std::vector<Label>{2, 2, 1}, 3) == 2);
}

TEST_CASE("single unbagged tree reproduces the plain decision tree (property)") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto data = synthetic::make_blobs({300 + 50 * seed, 4, 2.0, seed});
        const auto forest = train_random_forest(
            data, {.n_trees = 1, .max_depth = 8, .max_bins = 32, .seed = seed, .bootstrap = false});
        const auto tree = train_decision_tree(data, {.max_depth = 8, .max_bins = 32, .seed = seed});
        CHECK(forest.feature_subset() == 4);
        CHECK(forest.trees().front() == tree);
        const auto probe = probes(500, 4, seed + 100);
        CHECK(forest.predict(probe) == tree.predict(probe));
    }
}

TEST_CASE("forest training is deterministic and independent of thread count") {
    const auto data = synthetic::make_blobs({600, 9, 3.0, 4});
    const ForestParams params{.n_trees = 24, .max_depth = 10, .max_bins = 32, .seed = 77};
    const auto serial = train_random_forest(data, params, Executor(1));
    const auto parallel = train_random_forest(data, params, Executor(4));
    CHECK(serial == parallel);
    CHECK(serial.feature_subset() == 3);
    const auto probe = probes(300, 9, 5);
    CHECK(serial.predict(probe, Executor(1)) == parallel.predict(probe, Executor(3)));

    auto other = params;
    other.seed = 78;
    CHECK_FALSE(train_random_forest(data, other) == serial);
}

TEST_CASE("forest learns separable blobs") {
    const auto train = synthetic::make_blobs({1000, 8, 8.0, 1});
    const auto test = synthetic::make_blobs({1000, 8, 8.0, 2});
    const auto forest = train_random_forest(train, {.n_trees = 30, .seed = 3});
    CHECK(accuracy(forest.predict(test), test.labels()) > 0.97);
    for (const auto& tree : forest.trees()) CHECK(tree.depth() <= 10);
}

TEST_CASE("forest errors and empty batches") {
    const auto data = synthetic::make_blobs({50, 3, 4.0, 1});
    CHECK_THROWS_AS(train_random_forest(Dataset({}, {}, 3, 2), {}), ArgumentError);
    CHECK_THROWS_AS(train_random_forest(data, {.n_trees = 0}), ArgumentError);
    const auto forest = train_random_forest(data, {.n_trees = 3});
    CHECK(forest.predict(Dataset({}, {}, 3, 2)).empty());
    CHECK_THROWS_AS(forest.predict(probes(2, 4, 1)), ArgumentError);
}
