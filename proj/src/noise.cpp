#include "noisefilter/noise.hpp"

#include <algorithm>

#include "json.hpp"
#include "noisefilter/errors.hpp"
#include "noisefilter/random.hpp"

namespace noisefilter {

NoisyDataset inject_uniform_class_noise(const Dataset& data, double level, std::uint64_t seed) {
    if (!(level >= 0.0 && level <= 1.0)) throw ArgumentError("noise level must lie in [0, 1]");
    const std::size_t n = data.size();
    const std::size_t flips = std::min(n, round_half_up(level * static_cast<double>(n)));

    Rng rng(seed);
    std::vector<InstanceId> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = i;
    for (std::size_t k = 0; k < flips; ++k) {
        const auto j = k + static_cast<std::size_t>(rng.uniform_index(n - k));
        std::swap(ids[k], ids[j]);
    }
    ids.resize(flips);
    std::sort(ids.begin(), ids.end());

    NoiseLedger ledger;
    ledger.level = level;
    ledger.seed = seed;
    ledger.dataset_size = n;
    std::vector<Label> labels(data.labels().begin(), data.labels().end());
    const auto others = data.num_classes() - 1;
    for (InstanceId id : ids) {
        const Label original = labels[id];
        auto replacement = static_cast<Label>(rng.uniform_index(others));
        if (replacement >= original) ++replacement;
        labels[id] = replacement;
        ledger.original_labels.emplace(id, original);
    }
    ledger.flipped_ids = std::move(ids);
    return {data.with_labels(std::move(labels)), std::move(ledger)};
}

Dataset restore_labels(const Dataset& noisy, const NoiseLedger& ledger) {
    std::vector<Label> labels(noisy.labels().begin(), noisy.labels().end());
    for (const auto& [id, label] : ledger.original_labels) {
        if (id >= labels.size()) throw ArgumentError("ledger id out of range for dataset");
        labels[id] = label;
    }
    return noisy.with_labels(std::move(labels));
}

std::string ledger_to_json(const NoiseLedger& ledger) {
    nlohmann::json flips = nlohmann::json::array();
    for (InstanceId id : ledger.flipped_ids) {
        flips.push_back({{"id", id}, {"original_label", ledger.original_labels.at(id)}});
    }
    const nlohmann::json doc{{"format", "noisefilter-noise-ledger"},
                             {"version", 1},
                             {"level", ledger.level},
                             {"seed", ledger.seed},
                             {"n", ledger.dataset_size},
                             {"flips", std::move(flips)}};
    return doc.dump(2);
}

NoiseLedger ledger_from_json(const std::string& json_text) {
    try {
        const auto doc = nlohmann::json::parse(json_text);
        if (doc.value("format", "") != "noisefilter-noise-ledger") throw FormatError("not a noise ledger", 0);
        NoiseLedger ledger;
        ledger.level = doc.at("level").get<double>();
        ledger.seed = doc.at("seed").get<std::uint64_t>();
        ledger.dataset_size = doc.at("n").get<std::size_t>();
        for (const auto& f : doc.at("flips")) {
            const auto id = f.at("id").get<InstanceId>();
            ledger.flipped_ids.push_back(id);
            ledger.original_labels.emplace(id, f.at("original_label").get<Label>());
        }
        std::sort(ledger.flipped_ids.begin(), ledger.flipped_ids.end());
        return ledger;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("ledger JSON: ") + e.what(), 0);
    }
}

}  // namespace noisefilter
