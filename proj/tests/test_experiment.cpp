#include <set>

#include "doctest.h"
#include "noisefilter/errors.hpp"
#include "noisefilter/experiment.hpp"

using namespace noisefilter;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.dataset.n = 600;
    c.dataset.seed = 3;
    c.repetitions = 2;
    FilterConfig hme;
    hme.n_trees = 20;
    c.filters = {hme};
    c.classifiers = {ClassifierSpec{}, ClassifierSpec{.kind = ClassifierSpec::Kind::decision_tree}};
    return c;
}

std::string field_of(const std::string& json) {
    try {
        parse_experiment_config(json);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<none>";
}

}  // namespace

TEST_CASE("summaries use the sample standard deviation") {
    const auto s = summarize({1.0, 2.0, 3.0, 4.0});
    CHECK(s.mean == doctest::Approx(2.5));
    CHECK(s.stddev == doctest::Approx(1.2909944487));
    CHECK(s.count == 4);
    CHECK(summarize({5.0}).stddev == 0.0);
    CHECK_FALSE(summarize({}).defined());
}

TEST_CASE("baseline only config yields the Original row") {
    ExperimentConfig c;
    c.dataset.n = 200;
    c.noise_levels = {0.0};
    c.repetitions = 1;
    const auto result = run_experiment(c);
    REQUIRE(result.rows.size() == 1);
    CHECK(result.rows[0].filter == "Original");
    CHECK(result.rows[0].classifier == "1NN");
    CHECK(result.rows[0].noise_level == 0.0);
    CHECK_FALSE(result.rows[0].recall.defined());
    CHECK(result.train_size + result.test_size == 200);
}

TEST_CASE("row accounting, ordering and a shared test set") {
    const auto config = small_config();
    const auto result = run_experiment(config);
    REQUIRE(result.rows.size() == 5 * 2 + 5 * 2);
    const char* filters[] = {"Original", "Original", "HME-BD[P=4 trees=20]", "HME-BD[P=4 trees=20]"};
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const auto& r = result.rows[i];
        CHECK(r.noise_level == config.noise_levels[i / 4]);
        CHECK(r.filter == filters[i % 4]);
        CHECK(r.classifier == config.classifiers[i % 2].name());
        CHECK(r.accuracy.count == 2);
    }
    std::set<std::uint64_t> digests;
    for (const auto& cell : result.cells) digests.insert(cell.test_digest);
    CHECK(digests.size() == 1);
    CHECK(result.cells.size() == 5 * 2 * 2);
    // Noisy levels define recall for the filter row.
    CHECK(result.rows[6].recall.defined());
    CHECK_FALSE(result.rows[4].recall.defined());

    const auto csv = rows_to_csv(result.rows);
    CHECK(csv.rfind(experiment_csv_header() + "\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);
    CHECK(result_to_json(result, config).find("\"noisefilter-benchmark\"") != std::string::npos);
}

TEST_CASE("unfiltered accuracy falls with noise and HME rescues it") {
    ExperimentConfig c;
    c.dataset.n = 2000;
    c.dataset.seed = 8;
    c.repetitions = 2;
    FilterConfig hme;
    hme.n_trees = 30;
    c.filters = {hme};
    const auto result = run_experiment(c);
    REQUIRE(result.rows.size() == 10);
    for (std::size_t level = 1; level < 5; ++level) {
        const double before = result.rows[2 * (level - 1)].accuracy.mean;
        const double original = result.rows[2 * level].accuracy.mean;
        const double filtered = result.rows[2 * level + 1].accuracy.mean;
        CHECK(original <= before + 1e-12);
        CHECK(filtered > original);
    }
}

TEST_CASE("results do not depend on the thread count") {
    const auto config = small_config();
    const auto a = run_experiment(config, Executor(1));
    const auto b = run_experiment(config, Executor(3));
    REQUIRE(a.cells.size() == b.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        CHECK(a.cells[i].removed_ids == b.cells[i].removed_ids);
        CHECK(a.cells[i].accuracies == b.cells[i].accuracies);
    }
}

TEST_CASE("config parsing") {
    const auto c = parse_experiment_config(R"({
        "dataset": {"kind": "overlapping_blobs", "n": 300},
        "noise_levels": [0.1],
        "filters": [{"method": "hte", "vote": "consensus", "trees": 10}, {"method": "enn"}],
        "classifiers": ["1nn", {"name": "tree", "max_depth": 5}],
        "repetitions": 3})");
    CHECK(c.dataset.separation == 2.0);
    CHECK(c.noise_levels == std::vector<double>{0.1});
    REQUIRE(c.filters.size() == 2);
    CHECK(c.filters[0].vote == VoteScheme::consensus);
    CHECK(c.filters[1].method == FilterMethod::enn);
    CHECK(c.classifiers[1].max_depth == 5);
    CHECK(c.repetitions == 3);
}

TEST_CASE("malformed configs name the offending field") {
    CHECK(field_of(R"({"dataset": {"kind": "blobs"}, "bogus": 1})") == "bogus");
    CHECK(field_of(R"({"dataset": {"kind": "blobs"}, "filters": [{"method": "svm"}]})") == "filters[0].method");
    CHECK(field_of(R"({"dataset": {"kind": "blobs"}, "noise_levels": [1.5]})").find("noise_levels") == 0);
    CHECK(field_of(R"({"dataset": {"kind": "blobs"}, "repetitions": 0})") == "repetitions");
    CHECK(field_of(R"({"noise_levels": [0.1]})") == "dataset");
    CHECK(field_of(R"({"dataset": {"kind": "csv"}})") == "dataset.path");
    CHECK_THROWS(parse_experiment_config("{not json"));
}
