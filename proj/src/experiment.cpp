#include "noisefilter/experiment.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"
#include "noisefilter/classifiers/decision_tree.hpp"
#include "noisefilter/classifiers/nearest_neighbor.hpp"
#include "noisefilter/errors.hpp"
#include "noisefilter/metrics.hpp"
#include "noisefilter/noise.hpp"
#include "noisefilter/partition.hpp"
#include "noisefilter/random.hpp"
#include "noisefilter/synthetic.hpp"

namespace noisefilter {
namespace {

using nlohmann::json;

// Stream offsets for seeds derived from the master seed.
constexpr std::uint64_t kSplitStream = 0;
constexpr std::uint64_t kNoiseStream = 100;
constexpr std::uint64_t kFilterStream = 200;
constexpr std::uint64_t kClassifierStream = 300;

class ExperimentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void reject_unknown_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items()) {
        if (!ok.count(key)) throw ConfigError(where + key, "unknown field");
    }
}

template <typename T>
T get_field(const json& obj, const std::string& key, const std::string& where, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + key, "has the wrong type");
    }
}

std::size_t get_count(const json& obj, const std::string& key, const std::string& where, std::size_t fallback,
                      std::size_t minimum) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(minimum)) {
        throw ConfigError(where + key, "must be an integer >= " + std::to_string(minimum));
    }
    return v.get<std::size_t>();
}

DatasetSource parse_source(const json& doc, const std::filesystem::path& base_dir) {
    const std::string where = "dataset.";
    if (!doc.is_object()) throw ConfigError("dataset", "must be an object");
    DatasetSource src;
    const auto kind = get_field<std::string>(doc, "kind", where, "blobs");
    if (kind == "blobs" || kind == "overlapping_blobs") {
        reject_unknown_keys(doc, where, {"kind", "name", "n", "features", "separation", "seed"});
        src.kind = DatasetSource::Kind::blobs;
        src.separation = kind == "blobs" ? 8.0 : 2.0;
        src.separation = get_field<double>(doc, "separation", where, src.separation);
        if (!(src.separation >= 0.0)) throw ConfigError(where + "separation", "must be non-negative");
        src.num_features = get_count(doc, "features", where, 8, 1);
    } else if (kind == "xor") {
        reject_unknown_keys(doc, where, {"kind", "name", "n", "seed"});
        src.kind = DatasetSource::Kind::xor_grid;
        src.num_features = 2;
    } else if (kind == "csv" || kind == "libsvm") {
        reject_unknown_keys(doc, where, {"kind", "name", "path", "label_column", "header", "categorical"});
        src.kind = kind == "csv" ? DatasetSource::Kind::csv : DatasetSource::Kind::libsvm;
        if (!doc.contains("path") || !doc.at("path").is_string()) throw ConfigError(where + "path", "is required");
        src.path = doc.at("path").get<std::string>();
        if (src.path.is_relative() && !base_dir.empty()) src.path = base_dir / src.path;
        if (doc.contains("label_column")) {
            const auto& lc = doc.at("label_column");
            if (lc.is_number_integer()) {
                src.csv.label_column = lc.get<long>();
            } else if (lc.is_string()) {
                src.csv.label_column = lc.get<std::string>();
            } else {
                throw ConfigError(where + "label_column", "must be an index or a column name");
            }
        }
        const auto header = get_field<std::string>(doc, "header", where, "detect");
        if (header == "detect") src.csv.header = io::HeaderMode::detect;
        else if (header == "present") src.csv.header = io::HeaderMode::present;
        else if (header == "absent") src.csv.header = io::HeaderMode::absent;
        else throw ConfigError(where + "header", "must be detect, present or absent");
        const auto cat = get_field<std::string>(doc, "categorical", where, "reject");
        if (cat == "reject") src.csv.categorical = io::CategoricalEncoding::reject;
        else if (cat == "ordinal") src.csv.categorical = io::CategoricalEncoding::ordinal;
        else if (cat == "one_hot") src.csv.categorical = io::CategoricalEncoding::one_hot;
        else throw ConfigError(where + "categorical", "must be reject, ordinal or one_hot");
    } else {
        throw ConfigError(where + "kind", "unknown dataset kind '" + kind + "'");
    }
    src.n = get_count(doc, "n", where, 5000, 2);
    src.seed = get_field<std::uint64_t>(doc, "seed", where, 1);
    src.name = get_field<std::string>(doc, "name", where,
                                      src.path.empty() ? kind : src.path.stem().string());
    return src;
}

FilterConfig parse_filter(const json& doc, const std::string& where) {
    if (!doc.is_object()) throw ConfigError(where.substr(0, where.size() - 1), "must be an object");
    reject_unknown_keys(doc, where,
                        {"method", "partitions", "trees", "max_depth", "max_bins", "vote", "stratified", "logistic"});
    FilterConfig f;
    if (!doc.contains("method")) throw ConfigError(where + "method", "is required");
    const auto method = parse_filter_method(get_field<std::string>(doc, "method", where, ""));
    if (!method) throw ConfigError(where + "method", "must be hme, hte or enn");
    f.method = *method;
    f.partitions = get_count(doc, "partitions", where, 4, 2);
    f.n_trees = get_count(doc, "trees", where, 100, 1);
    f.max_depth = get_count(doc, "max_depth", where, 10, 0);
    f.max_bins = get_count(doc, "max_bins", where, 32, 2);
    f.stratified = get_field<bool>(doc, "stratified", where, false);
    if (doc.contains("vote")) {
        const auto vote = parse_vote_scheme(get_field<std::string>(doc, "vote", where, ""));
        if (!vote) throw ConfigError(where + "vote", "must be majority or consensus");
        f.vote = *vote;
    }
    if (doc.contains("logistic")) {
        const auto& lg = doc.at("logistic");
        const std::string lw = where + "logistic.";
        if (!lg.is_object()) throw ConfigError(where + "logistic", "must be an object");
        reject_unknown_keys(lg, lw, {"iterations", "step", "l2"});
        f.logistic.iterations = get_count(lg, "iterations", lw, 100, 0);
        f.logistic.step = get_field<double>(lg, "step", lw, 1.0);
        f.logistic.l2 = get_field<double>(lg, "l2", lw, 0.0);
        if (!(f.logistic.step > 0.0)) throw ConfigError(lw + "step", "must be positive");
        if (!(f.logistic.l2 >= 0.0)) throw ConfigError(lw + "l2", "must be non-negative");
    }
    return f;
}

ClassifierSpec parse_classifier(const json& doc, const std::string& where) {
    ClassifierSpec spec;
    std::string name;
    if (doc.is_string()) {
        name = doc.get<std::string>();
    } else if (doc.is_object()) {
        reject_unknown_keys(doc, where + ".", {"name", "max_depth", "max_bins"});
        name = get_field<std::string>(doc, "name", where + ".", "");
        spec.max_depth = get_count(doc, "max_depth", where + ".", 20, 0);
        spec.max_bins = get_count(doc, "max_bins", where + ".", 32, 2);
    } else {
        throw ConfigError(where, "must be a name or an object");
    }
    if (name == "1nn" || name == "knn") spec.kind = ClassifierSpec::Kind::nearest_neighbor;
    else if (name == "tree" || name == "decision_tree") spec.kind = ClassifierSpec::Kind::decision_tree;
    else throw ConfigError(where, "unknown classifier '" + name + "'");
    return spec;
}

std::vector<Label> train_and_predict(const ClassifierSpec& spec, const Dataset& train, const Dataset& test,
                                     std::uint64_t seed, const Executor& exec) {
    if (train.empty()) throw ArgumentError("filtered training set is empty");
    if (spec.kind == ClassifierSpec::Kind::nearest_neighbor) {
        const NearestNeighborModel model(train, 1);
        return predict_1nn(model, test, false, exec);
    }
    const auto tree = train_decision_tree(
        train, TreeParams{.max_depth = spec.max_depth, .max_bins = spec.max_bins, .feature_subset = 0, .seed = seed});
    return tree.predict(test);
}

std::string format_level(double level) { return io::format_double(level); }

json summary_json(const MetricSummary& m) {
    if (!m.defined()) return json{{"mean", nullptr}, {"std", nullptr}, {"n", 0}};
    return json{{"mean", m.mean}, {"std", m.stddev}, {"n", m.count}};
}

}  // namespace

Dataset load_source(const DatasetSource& source) {
    switch (source.kind) {
        case DatasetSource::Kind::blobs:
            return synthetic::make_blobs({source.n, source.num_features, source.separation, source.seed});
        case DatasetSource::Kind::xor_grid: return synthetic::make_xor_grid(source.n, source.seed);
        case DatasetSource::Kind::csv: return io::load_csv(source.path, source.csv);
        case DatasetSource::Kind::libsvm: return io::load_libsvm(source.path);
    }
    throw ArgumentError("unknown dataset source");
}

std::string ClassifierSpec::name() const {
    if (kind == Kind::nearest_neighbor) return "1NN";
    return "DecisionTree[depth=" + std::to_string(max_depth) + " bins=" + std::to_string(max_bins) + "]";
}

ExperimentConfig parse_experiment_config(const std::string& json_text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("<document>", "must be a JSON object");
    reject_unknown_keys(doc, "", {"schema_version", "dataset", "train_fraction", "noise_levels", "filters",
                                  "classifiers", "seed", "repetitions"});
    if (doc.contains("schema_version") &&
        (!doc.at("schema_version").is_number_integer() || doc.at("schema_version").get<int>() != kExperimentSchemaVersion)) {
        throw ConfigError("schema_version", "must be " + std::to_string(kExperimentSchemaVersion));
    }

    ExperimentConfig config;
    if (!doc.contains("dataset")) throw ConfigError("dataset", "is required");
    config.dataset = parse_source(doc.at("dataset"), base_dir);

    config.train_fraction = get_field<double>(doc, "train_fraction", "", 0.5);
    if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0)) {
        throw ConfigError("train_fraction", "must lie in (0, 1)");
    }
    if (doc.contains("noise_levels")) {
        const auto& levels = doc.at("noise_levels");
        if (!levels.is_array() || levels.empty()) throw ConfigError("noise_levels", "must be a non-empty array");
        config.noise_levels.clear();
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const std::string field = "noise_levels[" + std::to_string(i) + "]";
            if (!levels[i].is_number()) throw ConfigError(field, "must be a number");
            const double level = levels[i].get<double>();
            if (!(level >= 0.0 && level <= 1.0)) throw ConfigError(field, "must lie in [0, 1]");
            config.noise_levels.push_back(level);
        }
    }
    if (doc.contains("filters")) {
        const auto& filters = doc.at("filters");
        if (!filters.is_array()) throw ConfigError("filters", "must be an array");
        for (std::size_t i = 0; i < filters.size(); ++i) {
            config.filters.push_back(parse_filter(filters[i], "filters[" + std::to_string(i) + "]."));
        }
    }
    if (doc.contains("classifiers")) {
        const auto& classifiers = doc.at("classifiers");
        if (!classifiers.is_array() || classifiers.empty()) {
            throw ConfigError("classifiers", "must be a non-empty array");
        }
        config.classifiers.clear();
        for (std::size_t i = 0; i < classifiers.size(); ++i) {
            config.classifiers.push_back(parse_classifier(classifiers[i], "classifiers[" + std::to_string(i) + "]"));
        }
    }
    config.seed = get_field<std::uint64_t>(doc, "seed", "", 1);
    config.repetitions = get_count(doc, "repetitions", "", 5, 1);
    return config;
}

MetricSummary summarize(const std::vector<double>& values) {
    MetricSummary s;
    s.count = values.size();
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const Executor& exec) {
    if (config.repetitions < 1) throw ArgumentError("repetitions must be at least 1");
    if (config.classifiers.empty()) throw ArgumentError("at least one evaluation classifier is required");
    for (double level : config.noise_levels) {
        if (!(level >= 0.0 && level <= 1.0)) throw ArgumentError("noise levels must lie in [0, 1]");
    }

    const Dataset data = load_source(config.dataset);
    const auto split = holdout_split(data, config.train_fraction, derive_seed(config.seed, kSplitStream));
    const std::uint64_t test_digest = content_digest(split.test);

    ExperimentResult result;
    result.train_size = split.train.size();
    result.test_size = split.test.size();

    const std::size_t n_filters = config.filters.size() + 1;  // slot 0 is the baseline
    const std::size_t n_classifiers = config.classifiers.size();

    struct Accumulator {
        std::vector<double> accuracy, kept, recall, precision, seconds;
    };

    for (double level : config.noise_levels) {
        std::vector<Accumulator> acc(n_filters * n_classifiers);
        for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
            const auto noisy =
                inject_uniform_class_noise(split.train, level, derive_seed(config.seed, kNoiseStream + rep));
            const std::uint64_t classifier_seed = derive_seed(config.seed, kClassifierStream + rep);

            for (std::size_t f = 0; f < n_filters; ++f) {
                const std::string filter_name = f == 0 ? "Original" : config.filters[f - 1].label();
                auto cell_error = [&](const std::string& classifier, const std::exception& e) {
                    std::ostringstream msg;
                    msg << "cell (noise_level=" << format_level(level) << ", filter=" << filter_name
                        << ", classifier=" << classifier << ", repetition=" << rep << ") failed: " << e.what();
                    return ExperimentError(msg.str());
                };

                CellTrace trace{level, rep, filter_name, content_digest(split.test), {}, {}};
                std::optional<FilterReport> report;
                if (f > 0) {
                    FilterConfig fc = config.filters[f - 1];
                    fc.seed = derive_seed(config.seed, kFilterStream + rep);
                    try {
                        report = run_filter(noisy.data, fc, exec);
                    } catch (const std::exception& e) {
                        throw cell_error("-", e);
                    }
                    trace.removed_ids = report->removed_ids;
                }
                const Dataset& train = report ? report->kept : noisy.data;

                for (std::size_t c = 0; c < n_classifiers; ++c) {
                    auto& a = acc[f * n_classifiers + c];
                    double acc_value = 0.0;
                    try {
                        const auto predicted = train_and_predict(config.classifiers[c], train, split.test,
                                                                 classifier_seed, exec);
                        acc_value = accuracy(predicted, split.test.labels());
                    } catch (const std::exception& e) {
                        throw cell_error(config.classifiers[c].name(), e);
                    }
                    a.accuracy.push_back(acc_value);
                    trace.accuracies.push_back(acc_value);
                    a.kept.push_back(static_cast<double>(train.size()));
                    if (report) {
                        a.seconds.push_back(report->wall_seconds);
                        if (!noisy.ledger.empty()) a.recall.push_back(noise_recall(*report, noisy.ledger));
                        if (!report->removed_ids.empty()) a.precision.push_back(noise_precision(*report, noisy.ledger));
                    }
                }
                result.cells.push_back(std::move(trace));
            }
        }
        for (std::size_t f = 0; f < n_filters; ++f) {
            for (std::size_t c = 0; c < n_classifiers; ++c) {
                const auto& a = acc[f * n_classifiers + c];
                ExperimentRow row;
                row.dataset = config.dataset.name;
                row.noise_level = level;
                row.filter = f == 0 ? "Original" : config.filters[f - 1].label();
                row.classifier = config.classifiers[c].name();
                row.repetitions = config.repetitions;
                row.accuracy = summarize(a.accuracy);
                row.kept = summarize(a.kept);
                row.recall = summarize(a.recall);
                row.precision = summarize(a.precision);
                row.filter_seconds = summarize(a.seconds);
                result.rows.push_back(std::move(row));
            }
        }
    }
    for (const auto& cell : result.cells) {
        if (cell.test_digest != test_digest) throw ExperimentError("test partition changed between cells");
    }
    return result;
}

std::string experiment_csv_header() {
    return "dataset,noise_level,filter,classifier,repetitions,accuracy_mean,accuracy_std,kept_mean,kept_std,"
           "recall_mean,recall_std,precision_mean,precision_std,filter_seconds_mean,filter_seconds_std";
}

std::string rows_to_csv(const std::vector<ExperimentRow>& rows) {
    std::ostringstream out;
    out << experiment_csv_header() << '\n';
    auto pair = [&out](const MetricSummary& m) {
        if (m.defined()) out << ',' << io::format_double(m.mean) << ',' << io::format_double(m.stddev);
        else out << ",,";
    };
    for (const auto& r : rows) {
        out << r.dataset << ',' << format_level(r.noise_level) << ',' << r.filter << ',' << r.classifier << ','
            << r.repetitions;
        pair(r.accuracy);
        pair(r.kept);
        pair(r.recall);
        pair(r.precision);
        pair(r.filter_seconds);
        out << '\n';
    }
    return out.str();
}

std::string result_to_json(const ExperimentResult& result, const ExperimentConfig& config) {
    json filters = json::array();
    for (const auto& f : config.filters) filters.push_back(f.label());
    json classifiers = json::array();
    for (const auto& c : config.classifiers) classifiers.push_back(c.name());
    json rows = json::array();
    for (const auto& r : result.rows) {
        rows.push_back({{"dataset", r.dataset},
                        {"noise_level", r.noise_level},
                        {"filter", r.filter},
                        {"classifier", r.classifier},
                        {"repetitions", r.repetitions},
                        {"accuracy", summary_json(r.accuracy)},
                        {"kept", summary_json(r.kept)},
                        {"recall", summary_json(r.recall)},
                        {"precision", summary_json(r.precision)},
                        {"filter_seconds", summary_json(r.filter_seconds)}});
    }
    const json doc{{"format", "noisefilter-benchmark"},
                   {"schema_version", kExperimentSchemaVersion},
                   {"config",
                    {{"dataset", config.dataset.name},
                     {"train_fraction", config.train_fraction},
                     {"noise_levels", config.noise_levels},
                     {"filters", std::move(filters)},
                     {"classifiers", std::move(classifiers)},
                     {"seed", config.seed},
                     {"repetitions", config.repetitions}}},
                   {"train_size", result.train_size},
                   {"test_size", result.test_size},
                   {"rows", std::move(rows)}};
    return doc.dump(2);
}

}  // namespace noisefilter
