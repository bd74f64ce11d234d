#include <set>

#include "doctest.h"
#include "noisefilter/errors.hpp"
#include "noisefilter/noise.hpp"
#include "noisefilter/synthetic.hpp"
#include "test_helpers.hpp"

using namespace noisefilter;

namespace {

Dataset labelled(std::size_t n, std::size_t classes) {
    std::vector<double> f(n);
    std::vector<Label> l(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = static_cast<double>(i);
        l[i] = static_cast<Label>(i % classes);
    }
    return Dataset(f, l, 1, classes);
}

/// round-half-up(level * n) computed on integers: level is p / 1000.
std::size_t expected_flips(std::size_t per_mille, std::size_t n) { return (per_mille * n * 2 + 1000) / 2000; }

}  // namespace

TEST_CASE("level zero leaves the data untouched") {
    const auto data = labelled(50, 2);
    const auto noisy = inject_uniform_class_noise(data, 0.0, 9);
    CHECK(noisy.data == data);
    CHECK(noisy.ledger.empty());
}

TEST_CASE("binary flips complement the label") {
    const auto data = labelled(100, 2);
    const auto noisy = inject_uniform_class_noise(data, 0.2, 1);
    CHECK(noisy.ledger.flipped_ids.size() == 20);
    std::size_t changed = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (noisy.data.label(i) != data.label(i)) {
            ++changed;
            CHECK(noisy.data.label(i) == 1 - data.label(i));
            CHECK(noisy.ledger.original_labels.at(i) == data.label(i));
        }
    }
    CHECK(changed == 20);
}

TEST_CASE("three-class flips never keep their label") {
    const auto data = labelled(1000, 3);
    const auto noisy = inject_uniform_class_noise(data, 0.1, 2);
    REQUIRE(noisy.ledger.flipped_ids.size() == 100);
    std::set<Label> targets;
    for (auto id : noisy.ledger.flipped_ids) {
        CHECK(noisy.data.label(id) != data.label(id));
        targets.insert(noisy.data.label(id));
    }
    CHECK(targets.size() == 3);
}

TEST_CASE("flip count equals round-half-up of level times n (property)") {
    for (std::size_t n : {1u, 2u, 7u, 10u, 101u, 333u, 1000u}) {
        const auto data = labelled(n, 2);
        for (std::size_t pm : {0u, 25u, 50u, 100u, 150u, 200u, 250u, 500u, 1000u}) {
            const auto noisy = inject_uniform_class_noise(data, static_cast<double>(pm) / 1000.0, n + pm);
            CHECK(noisy.ledger.flipped_ids.size() == expected_flips(pm, n));
            CHECK(std::is_sorted(noisy.ledger.flipped_ids.begin(), noisy.ledger.flipped_ids.end()));
            CHECK(noisy.data.feature_matrix().size() == data.feature_matrix().size());
            for (std::size_t i = 0; i < n; ++i) CHECK(noisy.data.origin_id(i) == data.origin_id(i));
        }
    }
}

TEST_CASE("restore_labels inverts an injection") {
    const auto data = synthetic::make_blobs({400, 2, 3.0, 2});
    const auto noisy = inject_uniform_class_noise(data, 0.15, 4);
    CHECK(restore_labels(noisy.data, noisy.ledger) == data);
}

TEST_CASE("injection is deterministic per seed") {
    const auto data = labelled(500, 4);
    const auto a = inject_uniform_class_noise(data, 0.2, 11);
    const auto b = inject_uniform_class_noise(data, 0.2, 11);
    const auto c = inject_uniform_class_noise(data, 0.2, 12);
    CHECK(a.data == b.data);
    CHECK(a.ledger == b.ledger);
    CHECK(a.ledger.flipped_ids != c.ledger.flipped_ids);
}

TEST_CASE("ledger JSON round trip") {
    const auto noisy = inject_uniform_class_noise(labelled(60, 3), 0.25, 5);
    CHECK(ledger_from_json(ledger_to_json(noisy.ledger)) == noisy.ledger);
    CHECK_THROWS_AS(ledger_from_json("{}"), FormatError);
}

TEST_CASE("level outside [0,1] is rejected") {
    const auto data = labelled(10, 2);
    CHECK_THROWS_AS(inject_uniform_class_noise(data, -0.1, 0), ArgumentError);
    CHECK_THROWS_AS(inject_uniform_class_noise(data, 1.5, 0), ArgumentError);
}
