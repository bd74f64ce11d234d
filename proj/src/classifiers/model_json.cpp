#include "noisefilter/classifiers/model_json.hpp"

#include "json.hpp"
#include "noisefilter/errors.hpp"

namespace noisefilter {
namespace {

using nlohmann::json;

json node_to_json(const std::vector<TreeNode>& nodes, std::uint32_t at) {
    const auto& node = nodes[at];
    if (node.is_leaf()) return json{{"leaf", node.label}};
    return json{{"feature", node.feature},
                {"threshold", node.threshold},
                {"label", node.label},
                {"left", node_to_json(nodes, node.left)},
                {"right", node_to_json(nodes, node.right)}};
}

std::uint32_t node_from_json(const json& doc, std::vector<TreeNode>& nodes) {
    const auto id = static_cast<std::uint32_t>(nodes.size());
    nodes.emplace_back();
    if (doc.contains("leaf")) {
        nodes[id].label = doc.at("leaf").get<Label>();
        return id;
    }
    nodes[id].feature = doc.at("feature").get<std::int32_t>();
    nodes[id].threshold = doc.at("threshold").get<double>();
    nodes[id].label = doc.at("label").get<Label>();
    const auto left = node_from_json(doc.at("left"), nodes);
    const auto right = node_from_json(doc.at("right"), nodes);
    nodes[id].left = left;
    nodes[id].right = right;
    return id;
}

json tree_to_json(const DecisionTreeModel& tree) {
    return json{{"num_features", tree.num_features()},
                {"num_classes", tree.num_classes()},
                {"root", node_to_json(tree.nodes(), 0)}};
}

DecisionTreeModel tree_from_json(const json& doc) {
    std::vector<TreeNode> nodes;
    node_from_json(doc.at("root"), nodes);
    return DecisionTreeModel(std::move(nodes), doc.at("num_features").get<std::size_t>(),
                             doc.at("num_classes").get<std::size_t>());
}

}  // namespace

std::string dump_model(const AnyModel& model) {
    json doc{{"format", "noisefilter-model"}, {"version", kModelFormatVersion}};
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, DecisionTreeModel>) {
                doc["kind"] = "decision_tree";
                doc["model"] = tree_to_json(m);
            } else if constexpr (std::is_same_v<T, RandomForestModel>) {
                doc["kind"] = "random_forest";
                json trees = json::array();
                for (const auto& t : m.trees()) trees.push_back(tree_to_json(t));
                doc["model"] = json{{"num_features", m.num_features()},
                                    {"num_classes", m.num_classes()},
                                    {"feature_subset", m.feature_subset()},
                                    {"tree_seeds", m.tree_seeds()},
                                    {"trees", std::move(trees)}};
            } else {
                doc["kind"] = "logistic_regression";
                json binaries = json::array();
                for (const auto& b : m.models()) {
                    binaries.push_back(
                        json{{"positive_class", b.positive_class}, {"weights", b.weights}, {"intercept", b.intercept}});
                }
                doc["model"] = json{{"num_features", m.num_features()},
                                    {"num_classes", m.num_classes()},
                                    {"binary_models", std::move(binaries)}};
            }
        },
        model);
    return doc.dump();
}

AnyModel load_model(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("model JSON: ") + e.what(), 0);
    }
    try {
        if (doc.value("format", "") != "noisefilter-model") throw FormatError("not a noisefilter model document", 0);
        if (doc.value("version", -1) != kModelFormatVersion) throw FormatError("unsupported model version", 0);
        const auto kind = doc.at("kind").get<std::string>();
        const json& body = doc.at("model");
        if (kind == "decision_tree") return tree_from_json(body);
        if (kind == "random_forest") {
            std::vector<DecisionTreeModel> trees;
            for (const auto& t : body.at("trees")) trees.push_back(tree_from_json(t));
            return RandomForestModel(std::move(trees), body.at("tree_seeds").get<std::vector<std::uint64_t>>(),
                                     body.at("feature_subset").get<std::size_t>(),
                                     body.at("num_features").get<std::size_t>(),
                                     body.at("num_classes").get<std::size_t>());
        }
        if (kind == "logistic_regression") {
            std::vector<BinaryLogistic> binaries;
            for (const auto& b : body.at("binary_models")) {
                binaries.push_back(BinaryLogistic{b.at("positive_class").get<Label>(),
                                                  b.at("weights").get<std::vector<double>>(),
                                                  b.at("intercept").get<double>()});
            }
            return LogisticRegressionModel(std::move(binaries), body.at("num_features").get<std::size_t>(),
                                           body.at("num_classes").get<std::size_t>());
        }
        throw FormatError("unknown model kind '" + kind + "'", 0);
    } catch (const json::exception& e) {
        throw FormatError(std::string("model JSON: ") + e.what(), 0);
    }
}

}  // namespace noisefilter
