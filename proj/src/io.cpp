#include "noisefilter/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "noisefilter/errors.hpp"

namespace noisefilter::io {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    s = s.substr(first, last - first + 1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::optional<double> parse_double(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return fields;
}

bool is_blank(std::string_view line) { return line.find_first_not_of(" \t\r\n") == std::string_view::npos; }

struct LabelMapping {
    std::vector<Label> labels;
    std::vector<std::string> names;
};

/// Maps raw label texts to dense class indices.
LabelMapping map_labels(const std::vector<std::string>& raw, std::optional<std::size_t> num_classes,
                        bool numeric_sorted_only) {
    std::vector<double> numeric;
    numeric.reserve(raw.size());
    bool all_numeric = true;
    for (const auto& text : raw) {
        const auto v = parse_double(text);
        if (!v || !std::isfinite(*v)) {
            all_numeric = false;
            break;
        }
        numeric.push_back(*v);
    }

    LabelMapping out;
    out.labels.reserve(raw.size());
    const bool direct =
        all_numeric && !numeric_sorted_only && std::all_of(numeric.begin(), numeric.end(), [](double v) {
            return v >= 0.0 && v == std::floor(v) && v < 1e9;
        });

    if (direct) {
        Label max_label = 0;
        for (double v : numeric) {
            out.labels.push_back(static_cast<Label>(v));
            max_label = std::max(max_label, out.labels.back());
        }
        const std::size_t inferred = raw.empty() ? 2 : std::max<std::size_t>(max_label + 1, 2);
        std::size_t classes = inferred;
        if (num_classes) {
            if (*num_classes < inferred) throw ArgumentError("num_classes override smaller than the label range");
            classes = *num_classes;
        }
        for (std::size_t c = 0; c < classes; ++c) out.names.push_back(std::to_string(c));
        return out;
    }

    if (all_numeric) {
        std::map<double, std::string> distinct;
        for (std::size_t i = 0; i < raw.size(); ++i) distinct.emplace(numeric[i], raw[i]);
        std::map<double, Label> index;
        for (const auto& [value, text] : distinct) {
            index.emplace(value, static_cast<Label>(out.names.size()));
            out.names.push_back(text);
        }
        for (double v : numeric) out.labels.push_back(index.at(v));
    } else {
        std::unordered_map<std::string, Label> index;
        for (const auto& text : raw) {
            auto [it, inserted] = index.try_emplace(text, static_cast<Label>(out.names.size()));
            if (inserted) out.names.push_back(text);
            out.labels.push_back(it->second);
        }
    }
    const std::size_t inferred = std::max<std::size_t>(out.names.size(), 2);
    std::size_t classes = inferred;
    if (num_classes) {
        if (*num_classes < out.names.size()) throw ArgumentError("num_classes override smaller than distinct labels");
        classes = *num_classes;
    }
    while (out.names.size() < classes) out.names.push_back("class_" + std::to_string(out.names.size()));
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

Dataset read_csv(std::istream& in, const CsvOptions& options) {
    struct Row {
        std::size_t line;
        std::vector<std::string> fields;
    };
    std::vector<Row> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t arity = 0;
    std::vector<std::string> header;

    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;
        auto fields = split(line, options.delimiter);
        if (rows.empty() && header.empty()) {
            arity = fields.size();
            bool is_header = false;
            switch (options.header) {
                case HeaderMode::present: is_header = true; break;
                case HeaderMode::absent: is_header = false; break;
                case HeaderMode::detect:
                    is_header = std::none_of(fields.begin(), fields.end(),
                                             [](std::string_view f) { return parse_double(f).has_value(); });
                    break;
            }
            if (is_header) {
                header.assign(fields.begin(), fields.end());
                continue;
            }
        }
        if (fields.size() != arity) {
            throw FormatError("expected " + std::to_string(arity) + " fields, found " +
                                  std::to_string(fields.size()),
                              line_no);
        }
        rows.push_back({line_no, std::vector<std::string>(fields.begin(), fields.end())});
    }
    if (rows.empty()) throw EmptyInputError("CSV input contains no data rows");
    if (arity < 2) throw FormatError("need at least one feature column and a label column", rows.front().line);

    std::size_t label_col = 0;
    if (const auto* idx = std::get_if<long>(&options.label_column)) {
        const long a = static_cast<long>(arity);
        const long resolved = *idx < 0 ? a + *idx : *idx;
        if (resolved < 0 || resolved >= a) throw ArgumentError("label column index out of range");
        label_col = static_cast<std::size_t>(resolved);
    } else {
        const auto& name = std::get<std::string>(options.label_column);
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw ArgumentError("label column '" + name + "' not found in header");
        label_col = static_cast<std::size_t>(it - header.begin());
    }

    // Per source column: numeric, or categorical with first-seen categories.
    const std::size_t n = rows.size();
    std::vector<std::size_t> feature_cols;
    for (std::size_t c = 0; c < arity; ++c) {
        if (c != label_col) feature_cols.push_back(c);
    }
    struct ColumnPlan {
        bool categorical = false;
        std::vector<std::string> categories;
        std::unordered_map<std::string, std::size_t> index;
    };
    std::vector<ColumnPlan> plans(feature_cols.size());
    for (std::size_t j = 0; j < feature_cols.size(); ++j) {
        auto& plan = plans[j];
        for (const auto& row : rows) {
            const auto& text = row.fields[feature_cols[j]];
            const auto v = parse_double(text);
            if (v && std::isfinite(*v)) continue;
            if (v || options.categorical == CategoricalEncoding::reject || text.empty()) {
                throw FormatError("unparseable numeric value '" + text + "' in column " +
                                      std::to_string(feature_cols[j]),
                                  row.line);
            }
            plan.categorical = true;
            break;
        }
        if (plan.categorical) {
            for (const auto& row : rows) {
                const auto& text = row.fields[feature_cols[j]];
                if (plan.index.try_emplace(text, plan.categories.size()).second) plan.categories.push_back(text);
            }
        }
    }

    std::size_t num_features = 0;
    for (const auto& plan : plans) {
        num_features += (plan.categorical && options.categorical == CategoricalEncoding::one_hot)
                            ? plan.categories.size()
                            : 1;
    }

    std::vector<double> features;
    features.reserve(n * num_features);
    std::vector<std::string> raw_labels;
    raw_labels.reserve(n);
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < feature_cols.size(); ++j) {
            const auto& plan = plans[j];
            const auto& text = row.fields[feature_cols[j]];
            if (!plan.categorical) {
                features.push_back(*parse_double(text));
            } else if (options.categorical == CategoricalEncoding::ordinal) {
                features.push_back(static_cast<double>(plan.index.at(text)));
            } else {
                const std::size_t hot = plan.index.at(text);
                for (std::size_t k = 0; k < plan.categories.size(); ++k) features.push_back(k == hot ? 1.0 : 0.0);
            }
        }
        raw_labels.push_back(row.fields[label_col]);
    }

    auto mapping = map_labels(raw_labels, options.num_classes, false);
    const std::size_t classes = mapping.names.size();
    return Dataset(std::move(features), std::move(mapping.labels), num_features, classes,
                   std::move(mapping.names));
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_csv(in, options);
}

Dataset read_libsvm(std::istream& in, std::optional<std::size_t> num_features) {
    struct Entry {
        std::size_t index;
        double value;
    };
    std::vector<std::vector<Entry>> rows;
    std::vector<std::string> raw_labels;
    std::string line;
    std::size_t line_no = 0;
    std::size_t max_index = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (is_blank(line)) continue;
        std::istringstream tokens(line);
        std::string token;
        tokens >> token;
        const auto label = parse_double(token);
        if (!label || !std::isfinite(*label)) throw FormatError("unparseable label '" + token + "'", line_no);
        raw_labels.push_back(token);

        std::vector<Entry> entries;
        std::size_t previous = 0;
        while (tokens >> token) {
            const auto colon = token.find(':');
            if (colon == std::string::npos) throw FormatError("expected index:value, got '" + token + "'", line_no);
            const std::string_view key(token.data(), colon);
            if (key == "qid") continue;
            std::size_t index = 0;
            const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), index);
            if (ec != std::errc{} || ptr != key.data() + key.size()) {
                throw FormatError("unparseable feature index '" + std::string(key) + "'", line_no);
            }
            if (index == 0) throw FormatError("feature indices are 1-based; found index 0", line_no);
            if (index <= previous) throw FormatError("feature indices must be strictly ascending", line_no);
            const auto value = parse_double(std::string_view(token).substr(colon + 1));
            if (!value || !std::isfinite(*value)) {
                throw FormatError("unparseable feature value in '" + token + "'", line_no);
            }
            entries.push_back({index, *value});
            previous = index;
        }
        max_index = std::max(max_index, previous);
        rows.push_back(std::move(entries));
    }
    if (rows.empty()) throw EmptyInputError("LibSVM input contains no data rows");

    std::size_t width = max_index;
    if (num_features) {
        if (*num_features < max_index) throw ArgumentError("num_features override smaller than max index");
        width = *num_features;
    }
    if (width == 0) throw FormatError("no feature indices present", 0);

    std::vector<double> features(rows.size() * width, 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const auto& e : rows[i]) features[i * width + e.index - 1] = e.value;
    }
    auto mapping = map_labels(raw_labels, std::nullopt, true);
    const std::size_t classes = mapping.names.size();
    return Dataset(std::move(features), std::move(mapping.labels), width, classes, std::move(mapping.names));
}

Dataset load_libsvm(const std::filesystem::path& path, std::optional<std::size_t> num_features) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_libsvm(in, num_features);
}

void write_csv(const Dataset& data, std::ostream& out) {
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (double v : data.row(i)) out << format_double(v) << ',';
        out << data.label(i) << '\n';
    }
}

void save_csv(const Dataset& data, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_csv(data, out);
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_libsvm(const Dataset& data, std::ostream& out) {
    for (std::size_t i = 0; i < data.size(); ++i) {
        out << data.label(i);
        const auto r = data.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (r[j] != 0.0) out << ' ' << (j + 1) << ':' << format_double(r[j]);
        }
        out << '\n';
    }
}

void save_libsvm(const Dataset& data, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_libsvm(data, out);
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string metadata_json(const Dataset& data) {
    nlohmann::json doc;
    doc["n"] = data.size();
    doc["num_features"] = data.num_features();
    doc["num_classes"] = data.num_classes();
    doc["labels"] = data.label_names();
    return doc.dump(2);
}

FileFormat format_from_extension(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".libsvm" || ext == ".svm" || ext == ".svmlight") return FileFormat::libsvm;
    return FileFormat::csv;
}

}  // namespace noisefilter::io
