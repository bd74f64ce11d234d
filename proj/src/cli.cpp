#include "noisefilter/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "noisefilter/classifiers/decision_tree.hpp"
#include "noisefilter/classifiers/nearest_neighbor.hpp"
#include "noisefilter/errors.hpp"
#include "noisefilter/experiment.hpp"
#include "noisefilter/filters.hpp"
#include "noisefilter/io.hpp"
#include "noisefilter/metrics.hpp"
#include "noisefilter/noise.hpp"
#include "noisefilter/synthetic.hpp"

namespace noisefilter::cli {
namespace {

namespace fs = std::filesystem;

struct InputOptions {
    std::string path;
    std::string format = "auto";
    std::string label_column = "-1";
    std::string categorical = "reject";
};

void add_input_options(CLI::App& cmd, InputOptions& in, const std::string& flag = "--input") {
    cmd.add_option(flag, in.path, "Dataset file")->required()->check(CLI::ExistingFile);
    cmd.add_option("--format", in.format, "csv | libsvm | auto (by extension)")
        ->check(CLI::IsMember({"auto", "csv", "libsvm"}));
    cmd.add_option("--label-column", in.label_column, "CSV label column: index (negative from end) or name");
    cmd.add_option("--categorical", in.categorical, "CSV non-numeric features: reject | ordinal | one_hot")
        ->check(CLI::IsMember({"reject", "ordinal", "one_hot"}));
}

io::FileFormat resolve_format(const std::string& format, const fs::path& path) {
    if (format == "csv") return io::FileFormat::csv;
    if (format == "libsvm") return io::FileFormat::libsvm;
    return io::format_from_extension(path);
}

Dataset load_input(const InputOptions& in, const std::string& path) {
    if (resolve_format(in.format, path) == io::FileFormat::libsvm) return io::load_libsvm(path);
    io::CsvOptions options;
    long index = 0;
    const auto& lc = in.label_column;
    const auto [ptr, ec] = std::from_chars(lc.data(), lc.data() + lc.size(), index);
    if (ec == std::errc{} && ptr == lc.data() + lc.size()) options.label_column = index;
    else options.label_column = lc;
    if (in.categorical == "ordinal") options.categorical = io::CategoricalEncoding::ordinal;
    if (in.categorical == "one_hot") options.categorical = io::CategoricalEncoding::one_hot;
    return io::load_csv(path, options);
}

void ensure_not_input(const std::string& output, const std::vector<std::string>& inputs) {
    if (output.empty()) return;
    for (const auto& input : inputs) {
        std::error_code ec;
        if (fs::exists(output) && fs::equivalent(output, input, ec)) {
            throw ArgumentError("output " + output + " would overwrite input " + input);
        }
    }
}

/// Writes via a temporary sibling and renames, so a failed run never
/// leaves a truncated file behind.
void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        body(out);
        out.flush();
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    fs::rename(tmp, target);
}

void write_dataset(const Dataset& data, const std::string& path, const std::string& format) {
    const auto fmt = resolve_format(format, path);
    write_file(path, [&](std::ostream& out) {
        if (fmt == io::FileFormat::libsvm) io::write_libsvm(data, out);
        else io::write_csv(data, out);
    });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Label-noise filtering toolkit: noise injection, ensemble and ENN filters, benchmarks", "noisefilter"};
    app.require_subcommand(1);

    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t seed = 1;
    app.add_option("--threads", threads, "Worker threads (results never depend on it)")
        ->envname("NOISEFILTER_THREADS")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Master seed")->envname("NOISEFILTER_SEED");

    // inject
    auto* inject = app.add_subcommand("inject", "Flip a fraction of labels uniformly to other classes");
    InputOptions inject_in;
    double level = 0.0;
    std::string inject_out, ledger_out, inject_out_format = "auto";
    add_input_options(*inject, inject_in);
    inject->add_option("--level", level, "Fraction of instances to flip, in [0, 1]")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    inject->add_option("--output", inject_out, "Noisy dataset output")->required();
    inject->add_option("--output-format", inject_out_format)->check(CLI::IsMember({"auto", "csv", "libsvm"}));
    inject->add_option("--ledger", ledger_out, "Ground-truth ledger JSON output");

    // filter
    auto* filter = app.add_subcommand("filter", "Remove suspected mislabeled instances");
    InputOptions filter_in;
    std::string method = "hme", vote = "majority", filter_out, report_out, filter_out_format = "auto";
    std::size_t partitions = 4, trees = 100, max_depth = 10, max_bins = 32;
    bool stratified = false, include_ids = false;
    add_input_options(*filter, filter_in);
    filter->add_option("--method", method, "hme | hte | enn")->required();
    filter->add_option("--partitions", partitions, "Number of folds P")->check(CLI::Range(std::size_t{2}, SIZE_MAX));
    filter->add_option("--trees", trees, "Random forest size")->check(CLI::Range(std::size_t{1}, SIZE_MAX));
    filter->add_option("--max-depth", max_depth, "Forest tree depth");
    filter->add_option("--max-bins", max_bins, "Split candidate bins")->check(CLI::Range(std::size_t{2}, std::size_t{65536}));
    filter->add_option("--vote", vote, "majority | consensus (HTE-BD)");
    filter->add_flag("--stratified", stratified, "Stratify folds by class");
    filter->add_option("--output", filter_out, "Kept dataset output");
    filter->add_option("--output-format", filter_out_format)->check(CLI::IsMember({"auto", "csv", "libsvm"}));
    filter->add_option("--report", report_out, "Filter report JSON output");
    filter->add_flag("--removed-ids", include_ids, "Include removed ids in the report");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Train a classifier and report test accuracy");
    InputOptions eval_train;
    std::string eval_test, classifier = "1nn", eval_out;
    std::size_t eval_depth = 20, eval_bins = 32;
    add_input_options(*evaluate, eval_train, "--train");
    evaluate->add_option("--test", eval_test, "Test dataset (same format options)")
        ->required()
        ->check(CLI::ExistingFile);
    evaluate->add_option("--classifier", classifier, "1nn | tree")->check(CLI::IsMember({"1nn", "tree"}));
    evaluate->add_option("--max-depth", eval_depth, "Decision tree depth");
    evaluate->add_option("--max-bins", eval_bins, "Decision tree bins")->check(CLI::Range(std::size_t{2}, std::size_t{65536}));
    evaluate->add_option("--output", eval_out, "Result JSON output (stdout when absent)");

    // benchmark
    auto* benchmark = app.add_subcommand("benchmark", "Run a noise-injection / filtering experiment");
    std::string config_path, bench_out, bench_json;
    benchmark->add_option("--config", config_path, "Experiment config JSON")->required()->check(CLI::ExistingFile);
    benchmark->add_option("--output", bench_out, "Results CSV")->required();
    benchmark->add_option("--json", bench_json, "Results JSON");

    // generate
    auto* generate = app.add_subcommand("generate", "Write a synthetic reference dataset");
    std::string gen_kind = "blobs", gen_out;
    std::size_t gen_n = 5000, gen_features = 8;
    double separation = -1.0;
    generate->add_option("--kind", gen_kind, "blobs | overlapping | xor")
        ->check(CLI::IsMember({"blobs", "overlapping", "xor"}));
    generate->add_option("--n", gen_n, "Instances")->check(CLI::Range(std::size_t{2}, SIZE_MAX));
    generate->add_option("--features", gen_features, "Features (blobs)")->check(CLI::Range(std::size_t{1}, SIZE_MAX));
    generate->add_option("--separation", separation, "Mean distance in standard deviations (blobs)");
    generate->add_option("--output", gen_out, "Output dataset")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    const Executor exec(threads);
    try {
        if (*inject) {
            ensure_not_input(inject_out, {inject_in.path});
            const auto data = load_input(inject_in, inject_in.path);
            const auto noisy = inject_uniform_class_noise(data, level, seed);
            write_dataset(noisy.data, inject_out, inject_out_format);
            if (!ledger_out.empty()) {
                write_file(ledger_out, [&](std::ostream& o) { o << ledger_to_json(noisy.ledger) << '\n'; });
            }
            out << "flipped " << noisy.ledger.flipped_ids.size() << " of " << data.size() << " labels\n";
        } else if (*filter) {
            FilterConfig config;
            const auto parsed_method = parse_filter_method(method);
            if (!parsed_method) throw ConfigError("--method", "unknown filter method '" + method + "'");
            const auto parsed_vote = parse_vote_scheme(vote);
            if (!parsed_vote) throw ConfigError("--vote", "must be majority or consensus");
            config.method = *parsed_method;
            config.vote = *parsed_vote;
            config.partitions = partitions;
            config.n_trees = trees;
            config.max_depth = max_depth;
            config.max_bins = max_bins;
            config.stratified = stratified;
            config.seed = seed;
            ensure_not_input(filter_out, {filter_in.path});
            ensure_not_input(report_out, {filter_in.path});
            const auto data = load_input(filter_in, filter_in.path);
            const auto report = run_filter(data, config, exec);
            if (!filter_out.empty()) write_dataset(report.kept, filter_out, filter_out_format);
            const auto json_text = report_to_json(report, include_ids);
            if (!report_out.empty()) {
                write_file(report_out, [&](std::ostream& o) { o << json_text << '\n'; });
            }
            out << report.config.label() << ": kept " << report.kept_ids.size() << ", removed "
                << report.removed_ids.size() << "\n";
        } else if (*evaluate) {
            ensure_not_input(eval_out, {eval_train.path, eval_test});
            const auto train = load_input(eval_train, eval_train.path);
            const auto test = load_input(eval_train, eval_test);
            std::vector<Label> predicted;
            std::string name;
            if (classifier == "1nn") {
                name = "1NN";
                predicted = predict_1nn(NearestNeighborModel(train, 1), test, false, exec);
            } else {
                name = "DecisionTree";
                predicted = train_decision_tree(train, {eval_depth, eval_bins, 0, seed}).predict(test);
            }
            const nlohmann::json doc{{"classifier", name},
                                     {"train_size", train.size()},
                                     {"test_size", test.size()},
                                     {"accuracy", accuracy(predicted, test.labels())}};
            if (eval_out.empty()) {
                out << doc.dump(2) << '\n';
            } else {
                write_file(eval_out, [&](std::ostream& o) { o << doc.dump(2) << '\n'; });
            }
        } else if (*benchmark) {
            ensure_not_input(bench_out, {config_path});
            ensure_not_input(bench_json, {config_path});
            std::ifstream in(config_path);
            std::stringstream text;
            text << in.rdbuf();
            const auto config = parse_experiment_config(text.str(), fs::path(config_path).parent_path());
            const auto result = run_experiment(config, exec);
            write_file(bench_out, [&](std::ostream& o) { o << rows_to_csv(result.rows); });
            if (!bench_json.empty()) {
                write_file(bench_json, [&](std::ostream& o) { o << result_to_json(result, config) << '\n'; });
            }
            out << "wrote " << result.rows.size() << " rows\n";
        } else if (*generate) {
            Dataset data;
            if (gen_kind == "xor") {
                data = synthetic::make_xor_grid(gen_n, seed);
            } else {
                auto spec = gen_kind == "blobs" ? synthetic::separable_blobs(gen_n, seed)
                                                : synthetic::overlapping_blobs(gen_n, seed);
                spec.num_features = gen_features;
                if (separation >= 0.0) spec.separation = separation;
                data = synthetic::make_blobs(spec);
            }
            write_dataset(data, gen_out, "auto");
            out << "wrote " << data.size() << " instances\n";
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace noisefilter::cli
