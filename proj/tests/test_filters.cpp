#include <algorithm>

#include "doctest.h"
#include "noisefilter/errors.hpp"
#include "noisefilter/filters.hpp"
#include "noisefilter/metrics.hpp"
#include "noisefilter/noise.hpp"
#include "noisefilter/synthetic.hpp"
#include "test_helpers.hpp"

using namespace noisefilter;

namespace {

FilterConfig small(FilterMethod method, std::uint64_t seed = 1) {
    FilterConfig cfg;
    cfg.method = method;
    cfg.n_trees = 20;
    cfg.seed = seed;
    return cfg;
}

void check_report_shape(const Dataset& data, const FilterReport& report) {
    CHECK(report.kept.size() + report.removed_ids.size() == data.size());
    CHECK(report.kept_ids.size() == report.kept.size());
    CHECK(std::is_sorted(report.kept_ids.begin(), report.kept_ids.end()));
    CHECK(std::is_sorted(report.removed_ids.begin(), report.removed_ids.end()));
    std::vector<InstanceId> all = report.kept_ids;
    all.insert(all.end(), report.removed_ids.begin(), report.removed_ids.end());
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i] == i);
    for (std::size_t i = 0; i < report.kept.size(); ++i) {
        const auto id = report.kept_ids[i];
        CHECK(report.kept.label(i) == data.label(id));
        CHECK(report.kept.origin_id(i) == data.origin_id(id));
        CHECK(std::equal(report.kept.row(i).begin(), report.kept.row(i).end(), data.row(id).begin()));
    }
}

}  // namespace

TEST_CASE("vote truth table") {
    const bool majority[] = {false, false, true, true};
    const bool consensus[] = {false, false, false, true};
    for (unsigned c = 0; c <= 3; ++c) {
        CHECK(vote_decision(c, VoteScheme::majority) == majority[c]);
        CHECK(vote_decision(c, VoteScheme::consensus) == consensus[c]);
        if (vote_decision(c, VoteScheme::consensus)) CHECK(vote_decision(c, VoteScheme::majority));
    }
    CHECK_THROWS_AS(vote_decision(4, VoteScheme::majority), ArgumentError);
}

TEST_CASE("method and vote names parse") {
    CHECK(parse_filter_method("HME-BD") == FilterMethod::hme);
    CHECK(parse_filter_method("hte") == FilterMethod::hte);
    CHECK(parse_filter_method("Enn") == FilterMethod::enn);
    CHECK_FALSE(parse_filter_method("knn").has_value());
    CHECK(parse_vote_scheme("consensus") == VoteScheme::consensus);
    CHECK_FALSE(parse_vote_scheme("unanimous").has_value());
    auto cfg = small(FilterMethod::hte);
    cfg.vote = VoteScheme::consensus;
    CHECK(cfg.label() == "HTE-BD[P=4 trees=20 vote=consensus]");
    CHECK(small(FilterMethod::enn).label() == "ENN-BD");
}

TEST_CASE("clean separable data keeps everything") {
    const auto data = synthetic::make_blobs({400, 4, 12.0, 2});
    for (auto m : {FilterMethod::hme, FilterMethod::hte, FilterMethod::enn}) {
        const auto report = run_filter(data, small(m));
        CHECK(report.removed_ids.empty());
        CHECK(report.kept == data);
    }
    auto cfg = small(FilterMethod::hte);
    cfg.vote = VoteScheme::consensus;
    CHECK(hte_bd(data, cfg).removed_ids.empty());
}

TEST_CASE("HME predicts every instance exactly once") {
    const auto data = synthetic::make_blobs({250, 3, 2.0, 6});
    const auto report = hme_bd(data, small(FilterMethod::hme));
    CHECK(report.predictions_made == data.size());
    REQUIRE(report.folds.size() == 4);
    std::size_t tested = 0, removed = 0;
    for (const auto& f : report.folds) {
        CHECK(f.train_size + f.test_size == data.size());
        tested += f.test_size;
        removed += f.removed;
    }
    CHECK(tested == data.size());
    CHECK(removed == report.removed_ids.size());
    check_report_shape(data, report);
}

TEST_CASE("consensus removals are a subset of majority removals (property)") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto base = synthetic::make_blobs({300, 3, 2.5, seed});
        const auto data = inject_uniform_class_noise(base, 0.2, seed).data;
        auto cfg = small(FilterMethod::hte, seed);
        const auto counts = hte_disagreements(data, cfg);
        cfg.vote = VoteScheme::majority;
        const auto maj = hte_bd(data, cfg);
        cfg.vote = VoteScheme::consensus;
        const auto con = hte_bd(data, cfg);
        CHECK(std::includes(maj.removed_ids.begin(), maj.removed_ids.end(), con.removed_ids.begin(),
                            con.removed_ids.end()));
        std::vector<InstanceId> expect_maj, expect_con;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            CHECK(counts[i] <= 3);
            if (counts[i] >= 2) expect_maj.push_back(i);
            if (counts[i] == 3) expect_con.push_back(i);
        }
        CHECK(maj.removed_ids == expect_maj);
        CHECK(con.removed_ids == expect_con);
        check_report_shape(data, maj);
        check_report_shape(data, con);
    }
}

TEST_CASE("filters are deterministic and independent of the thread count") {
    const auto data = inject_uniform_class_noise(synthetic::make_blobs({500, 4, 3.0, 4}), 0.1, 4).data;
    for (auto m : {FilterMethod::hme, FilterMethod::hte, FilterMethod::enn}) {
        const auto one = run_filter(data, small(m, 7), Executor(1));
        const auto four = run_filter(data, small(m, 7), Executor(4));
        const auto again = run_filter(data, small(m, 7), Executor(1));
        CHECK(one.removed_ids == four.removed_ids);
        CHECK(one.removed_ids == again.removed_ids);
        CHECK(one.kept == four.kept);
    }
}

TEST_CASE("ENN examples") {
    SUBCASE("duplicated instances keep everything") {
        const auto data = testing::make_dataset({{0}, {0}, {5}, {5}, {9}, {9}}, {0, 0, 1, 1, 0, 0});
        CHECK(enn_bd(data).removed_ids.empty());
    }
    SUBCASE("alternating labels remove everything") {
        const auto data = testing::make_dataset({{0}, {1}, {2}, {3}}, {0, 1, 0, 1});
        CHECK(enn_bd(data).removed_ids == std::vector<InstanceId>{0, 1, 2, 3});
        CHECK(enn_bd(data).kept.empty());
    }
    SUBCASE("two tight clusters keep everything") {
        const auto data =
            testing::make_dataset({{0, 0}, {0.1, 0}, {0, 0.1}, {50, 50}, {50.1, 50}, {50, 50.1}}, {0, 0, 0, 1, 1, 1});
        CHECK(enn_bd(data).removed_ids.empty());
    }
    SUBCASE("a single instance is rejected") {
        CHECK_THROWS_AS(enn_bd(testing::make_dataset({{0}}, {0})), ArgumentError);
    }
}

TEST_CASE("ENN matches origin ids of subset data") {
    const auto full = testing::make_dataset({{0}, {1}, {2}, {3}, {10}, {10.5}}, {0, 1, 0, 1, 1, 1});
    const std::vector<InstanceId> pick{4, 5};
    const auto sub = full.subset(pick);
    CHECK(enn_bd(sub).removed_ids.empty());
}

TEST_CASE("kept count does not grow with the noise level") {
    const auto base = synthetic::make_blobs({1200, 4, 6.0, 21});
    for (auto m : {FilterMethod::hme, FilterMethod::hte}) {
        std::size_t previous = base.size() + 1;
        for (double level : {0.0, 0.05, 0.10, 0.15, 0.20}) {
            const auto noisy = inject_uniform_class_noise(base, level, 99);
            const auto kept = run_filter(noisy.data, small(m, 3)).kept.size();
            CHECK(kept <= previous);
            previous = kept;
        }
    }
}

TEST_CASE("HME recall on noisy blobs, and HTE tracks it") {
    const auto base = synthetic::make_blobs({2000, 8, 8.0, 5});
    const auto noisy = inject_uniform_class_noise(base, 0.2, 5);
    FilterConfig cfg;
    cfg.seed = 5;
    cfg.method = FilterMethod::hme;
    const auto hme = hme_bd(noisy.data, cfg);
    const double hme_recall = noise_recall(hme, noisy.ledger);
    CHECK(hme_recall >= 0.60);
    cfg.method = FilterMethod::hte;
    const double hte_recall = noise_recall(hte_bd(noisy.data, cfg), noisy.ledger);
    CHECK(std::abs(hte_recall - hme_recall) <= 0.15);
}

TEST_CASE("filter errors") {
    const auto data = testing::make_dataset({{0}, {1}, {2}}, {0, 1, 0});
    auto cfg = small(FilterMethod::hme);
    cfg.partitions = 1;
    CHECK_THROWS_AS(hme_bd(data, cfg), ArgumentError);
    cfg.partitions = 4;
    CHECK_THROWS_AS(hme_bd(data, cfg), ArgumentError);
    cfg.n_trees = 0;
    cfg.partitions = 2;
    CHECK_THROWS_AS(hme_bd(data, cfg), ArgumentError);
}

TEST_CASE("report JSON echoes the configuration") {
    const auto data = synthetic::make_blobs({80, 2, 1.0, 3});
    auto cfg = small(FilterMethod::hte);
    cfg.vote = VoteScheme::consensus;
    const auto report = hte_bd(data, cfg);
    const auto text = report_to_json(report, true);
    CHECK(text.find("\"consensus\"") != std::string::npos);
    CHECK(text.find("\"removed_ids\"") != std::string::npos);
    CHECK(report_to_json(report, false).find("\"removed_ids\"") == std::string::npos);
}
