#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "noisefilter/dataset.hpp"

namespace noisefilter {

struct LogisticParams {
    std::size_t iterations = 100;
    double step = 1.0;  ///< step at iteration t is step / sqrt(t)
    double l2 = 0.0;
};

/// Mean binary log-loss with an L2 penalty on the weights (not the
/// intercept). Parameters are laid out as [w_0 .. w_{d-1}, intercept].
class LogisticObjective {
public:
    /// `features` is row-major rows x cols; `targets` are 0/1.
    LogisticObjective(std::span<const double> features, std::size_t rows, std::size_t cols,
                      std::span<const double> targets, double l2);

    double loss(std::span<const double> params) const;
    std::vector<double> gradient(std::span<const double> params) const;

    std::size_t num_params() const noexcept { return cols_ + 1; }

private:
    std::span<const double> features_;
    std::size_t rows_;
    std::size_t cols_;
    std::span<const double> targets_;
    double l2_;
};

struct BinaryLogistic {
    Label positive_class = 1;
    std::vector<double> weights;  ///< original feature scale
    double intercept = 0.0;

    double score(std::span<const double> features) const;
    friend bool operator==(const BinaryLogistic&, const BinaryLogistic&) = default;
};

/// One binary model for two classes (positive = class 1), otherwise one
/// model per class scored one-vs-rest.
class LogisticRegressionModel {
public:
    LogisticRegressionModel() = default;
    LogisticRegressionModel(std::vector<BinaryLogistic> models, std::size_t num_features, std::size_t num_classes);

    Label predict(std::span<const double> features) const;
    std::vector<Label> predict(const Dataset& batch) const;

    const std::vector<BinaryLogistic>& models() const noexcept { return models_; }
    std::size_t num_features() const noexcept { return num_features_; }
    std::size_t num_classes() const noexcept { return num_classes_; }

    friend bool operator==(const LogisticRegressionModel&, const LogisticRegressionModel&) = default;

private:
    std::vector<BinaryLogistic> models_;
    std::size_t num_features_ = 0;
    std::size_t num_classes_ = 0;
};

/// Optional per-iteration record of the (standardized-space) objective.
struct LogisticTrace {
    std::vector<std::vector<double>> losses;  ///< per binary model, iterations + 1 entries
};

/// Full-batch gradient descent on standardized features; the weights are
/// folded back to the original scale afterwards.
LogisticRegressionModel train_logistic_regression(const Dataset& train, const LogisticParams& params = {},
                                                  LogisticTrace* trace = nullptr);

}  // namespace noisefilter
