#pragma once

#include <string>
#include <variant>

#include "noisefilter/classifiers/decision_tree.hpp"
#include "noisefilter/classifiers/logistic_regression.hpp"
#include "noisefilter/classifiers/random_forest.hpp"

namespace noisefilter {

inline constexpr int kModelFormatVersion = 1;

using AnyModel = std::variant<DecisionTreeModel, RandomForestModel, LogisticRegressionModel>;

/// Self-describing JSON: a header {"format": "noisefilter-model",
/// "version": 1, "kind": ...} followed by the model body. Trees are nested
/// node objects, logistic weights plain arrays.
std::string dump_model(const AnyModel& model);

/// Parses a document produced by dump_model. Throws FormatError on unknown
/// formats, versions or kinds.
AnyModel load_model(const std::string& json_text);

}  // namespace noisefilter
