#include "noisefilter/classifiers/logistic_regression.hpp"

#include <algorithm>
#include <cmath>

#include "noisefilter/errors.hpp"

namespace noisefilter {
namespace {

// log(1 + e^z) without overflow.
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

}  // namespace

LogisticObjective::LogisticObjective(std::span<const double> features, std::size_t rows, std::size_t cols,
                                     std::span<const double> targets, double l2)
    : features_(features), rows_(rows), cols_(cols), targets_(targets), l2_(l2) {
    if (features_.size() != rows_ * cols_ || targets_.size() != rows_) {
        throw ArgumentError("logistic objective dimensions do not match");
    }
    if (rows_ == 0) throw ArgumentError("logistic objective needs at least one row");
}

double LogisticObjective::loss(std::span<const double> params) const {
    double total = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double z = params[cols_];
        for (std::size_t j = 0; j < cols_; ++j) z += params[j] * features_[i * cols_ + j];
        total += softplus(z) - targets_[i] * z;
    }
    double penalty = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) penalty += params[j] * params[j];
    return total / static_cast<double>(rows_) + 0.5 * l2_ * penalty;
}

std::vector<double> LogisticObjective::gradient(std::span<const double> params) const {
    std::vector<double> grad(cols_ + 1, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* x = features_.data() + i * cols_;
        double z = params[cols_];
        for (std::size_t j = 0; j < cols_; ++j) z += params[j] * x[j];
        const double residual = sigmoid(z) - targets_[i];
        for (std::size_t j = 0; j < cols_; ++j) grad[j] += residual * x[j];
        grad[cols_] += residual;
    }
    const double inv_n = 1.0 / static_cast<double>(rows_);
    for (std::size_t j = 0; j < cols_; ++j) grad[j] = grad[j] * inv_n + l2_ * params[j];
    grad[cols_] *= inv_n;
    return grad;
}

double BinaryLogistic::score(std::span<const double> features) const {
    double z = intercept;
    for (std::size_t j = 0; j < weights.size(); ++j) z += weights[j] * features[j];
    return z;
}

LogisticRegressionModel::LogisticRegressionModel(std::vector<BinaryLogistic> models, std::size_t num_features,
                                                 std::size_t num_classes)
    : models_(std::move(models)), num_features_(num_features), num_classes_(num_classes) {
    const std::size_t expected = num_classes_ == 2 ? 1 : num_classes_;
    if (num_classes_ < 2 || models_.size() != expected) throw ArgumentError("wrong number of binary models");
    for (const auto& m : models_) {
        if (m.weights.size() != num_features_) throw ArgumentError("logistic weight arity mismatch");
        if (m.positive_class >= num_classes_) throw ArgumentError("logistic positive class out of range");
        if (!std::isfinite(m.intercept) ||
            !std::all_of(m.weights.begin(), m.weights.end(), [](double w) { return std::isfinite(w); })) {
            throw ArgumentError("logistic weights must be finite");
        }
    }
}

Label LogisticRegressionModel::predict(std::span<const double> features) const {
    if (models_.size() == 1) return models_[0].score(features) > 0.0 ? Label{1} : Label{0};
    Label best = 0;
    double best_score = models_[0].score(features);
    for (std::size_t k = 1; k < models_.size(); ++k) {
        const double s = models_[k].score(features);
        if (s > best_score) {
            best_score = s;
            best = static_cast<Label>(k);
        }
    }
    return best;
}

std::vector<Label> LogisticRegressionModel::predict(const Dataset& batch) const {
    if (!batch.empty() && batch.num_features() != num_features_) {
        throw ArgumentError("batch feature arity does not match the logistic model");
    }
    std::vector<Label> out(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) out[i] = predict(batch.row(i));
    return out;
}

LogisticRegressionModel train_logistic_regression(const Dataset& train, const LogisticParams& params,
                                                  LogisticTrace* trace) {
    if (train.empty()) throw ArgumentError("cannot train logistic regression on an empty dataset");
    const std::size_t n = train.size();
    const std::size_t d = train.num_features();

    // Standardize with population mean/std; constant columns are zeroed.
    std::vector<double> mean(d, 0.0), scale(d, 0.0);
    const auto raw = train.feature_matrix();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) mean[j] += raw[i * d + j];
    }
    for (auto& m : mean) m /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const double c = raw[i * d + j] - mean[j];
            scale[j] += c * c;
        }
    }
    for (auto& s : scale) {
        const double sd = std::sqrt(s / static_cast<double>(n));
        s = sd > 0.0 ? 1.0 / sd : 0.0;
    }
    std::vector<double> standardized(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) standardized[i * d + j] = (raw[i * d + j] - mean[j]) * scale[j];
    }

    const std::size_t num_models = train.num_classes() == 2 ? 1 : train.num_classes();
    std::vector<BinaryLogistic> models;
    std::vector<double> targets(n);
    if (trace) trace->losses.assign(num_models, {});
    for (std::size_t k = 0; k < num_models; ++k) {
        const Label positive = num_models == 1 ? Label{1} : static_cast<Label>(k);
        for (std::size_t i = 0; i < n; ++i) targets[i] = train.label(i) == positive ? 1.0 : 0.0;
        const LogisticObjective objective(standardized, n, d, targets, params.l2);

        std::vector<double> theta(d + 1, 0.0);
        if (trace) trace->losses[k].push_back(objective.loss(theta));
        for (std::size_t t = 1; t <= params.iterations; ++t) {
            const auto grad = objective.gradient(theta);
            const double rate = params.step / std::sqrt(static_cast<double>(t));
            for (std::size_t j = 0; j <= d; ++j) theta[j] -= rate * grad[j];
            if (trace) trace->losses[k].push_back(objective.loss(theta));
        }

        BinaryLogistic model;
        model.positive_class = positive;
        model.weights.resize(d);
        model.intercept = theta[d];
        for (std::size_t j = 0; j < d; ++j) {
            model.weights[j] = theta[j] * scale[j];
            model.intercept -= model.weights[j] * mean[j];
        }
        models.push_back(std::move(model));
    }
    return LogisticRegressionModel(std::move(models), d, train.num_classes());
}

}  // namespace noisefilter
