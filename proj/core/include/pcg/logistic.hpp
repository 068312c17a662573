#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pcg {

/// Multinomial (softmax) logistic regression.
struct LogisticModel {
    std::vector<std::vector<double>> weights;  // classes x features
    std::vector<double> bias;                  // classes

    std::size_t classes() const noexcept { return bias.size(); }
    std::size_t features() const noexcept { return weights.empty() ? 0 : weights.front().size(); }
};

struct LogisticConfig {
    double l2 = 1e-4;          // penalty on weights, not on biases
    int max_epochs = 100;
    double tolerance = 1e-10;  // relative loss change that ends training
    std::uint64_t seed = 0;    // initial weights
};

struct LogisticFit {
    LogisticModel model;
    double loss = 0.0;
    int epochs = 0;
    bool converged = false;
};

/// Class probabilities for one feature row; sums to 1.
std::vector<double> predict_proba(const LogisticModel& model, std::span<const double> row);

/// Mean cross-entropy plus l2/2 * |W|^2. When `gradient` is given it receives
/// the analytic gradient in the same layout as the model.
double logistic_loss(const LogisticModel& model, const std::vector<std::vector<double>>& x,
                     const std::vector<int>& y, double l2, LogisticModel* gradient = nullptr);

/// Damped Newton iterations with a backtracking (Armijo) line search.
/// Warns through pcg::warn if max_epochs is reached first.
LogisticFit fit_logistic(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                         std::size_t classes, const LogisticConfig& config = {});

}  // namespace pcg
