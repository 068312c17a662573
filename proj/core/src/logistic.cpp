#include "pcg/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "pcg/diagnostics.hpp"
#include "pcg/error.hpp"
#include "pcg/signal.hpp"

namespace pcg {
namespace {

void softmax_scores(const LogisticModel& m, std::span<const double> row, std::vector<double>& p) {
    const std::size_t k = m.classes();
    p.resize(k);
    double top = -INFINITY;
    for (std::size_t c = 0; c < k; ++c) {
        double z = m.bias[c];
        for (std::size_t f = 0; f < row.size(); ++f) z += m.weights[c][f] * row[f];
        p[c] = z;
        top = std::max(top, z);
    }
    double sum = 0.0;
    for (auto& v : p) {
        v = std::exp(v - top);
        sum += v;
    }
    for (auto& v : p) v /= sum;
}

LogisticModel zeros_like(const LogisticModel& m) {
    LogisticModel z;
    z.weights.assign(m.classes(), std::vector<double>(m.features(), 0.0));
    z.bias.assign(m.classes(), 0.0);
    return z;
}

double dot(const LogisticModel& a, const LogisticModel& b) {
    double s = 0.0;
    for (std::size_t c = 0; c < a.classes(); ++c) {
        s += a.bias[c] * b.bias[c];
        for (std::size_t f = 0; f < a.features(); ++f) s += a.weights[c][f] * b.weights[c][f];
    }
    return s;
}

LogisticModel step(const LogisticModel& m, const LogisticModel& g, double t) {
    LogisticModel out = m;
    for (std::size_t c = 0; c < m.classes(); ++c) {
        out.bias[c] -= t * g.bias[c];
        for (std::size_t f = 0; f < m.features(); ++f) out.weights[c][f] -= t * g.weights[c][f];
    }
    return out;
}

}  // namespace

std::vector<double> predict_proba(const LogisticModel& model, std::span<const double> row) {
    if (row.size() != model.features()) {
        throw Error("logistic model expects " + std::to_string(model.features()) + " features, got " +
                    std::to_string(row.size()));
    }
    std::vector<double> p;
    softmax_scores(model, row, p);
    return p;
}

double logistic_loss(const LogisticModel& model, const std::vector<std::vector<double>>& x,
                     const std::vector<int>& y, double l2, LogisticModel* gradient) {
    if (x.size() != y.size() || x.empty()) throw Error("logistic loss needs matching, non-empty rows and labels");
    const std::size_t k = model.classes();
    if (gradient) *gradient = zeros_like(model);
    std::vector<double> p;
    double loss = 0.0;
    const double inv_n = 1.0 / static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        softmax_scores(model, x[i], p);
        const auto label = static_cast<std::size_t>(y[i]);
        loss -= std::log(std::max(p[label], 1e-300));
        if (gradient) {
            for (std::size_t c = 0; c < k; ++c) {
                const double r = (p[c] - (c == label ? 1.0 : 0.0)) * inv_n;
                gradient->bias[c] += r;
                for (std::size_t f = 0; f < x[i].size(); ++f) gradient->weights[c][f] += r * x[i][f];
            }
        }
    }
    loss *= inv_n;
    double penalty = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t f = 0; f < model.features(); ++f) {
            penalty += model.weights[c][f] * model.weights[c][f];
            if (gradient) gradient->weights[c][f] += l2 * model.weights[c][f];
        }
    }
    return loss + 0.5 * l2 * penalty;
}

LogisticFit fit_logistic(const std::vector<std::vector<double>>& x, const std::vector<int>& y, std::size_t classes,
                         const LogisticConfig& config) {
    if (x.empty() || x.size() != y.size()) throw Error("logistic fit needs matching, non-empty rows and labels");
    if (classes < 2) throw Error("logistic fit needs at least two classes");
    const std::size_t features = x.front().size();
    for (const auto& row : x) {
        if (row.size() != features) throw Error("logistic fit: ragged feature rows");
    }
    for (int label : y) {
        if (label < 0 || static_cast<std::size_t>(label) >= classes) {
            throw Error("logistic fit: label " + std::to_string(label) + " out of range");
        }
    }

    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> init(0.0, 0.01);
    LogisticFit fit;
    fit.model.weights.assign(classes, std::vector<double>(features));
    fit.model.bias.assign(classes, 0.0);
    for (auto& row : fit.model.weights) {
        for (auto& w : row) w = init(rng);
    }

    const std::size_t block = features + 1;
    const std::size_t dims = classes * block;
    LogisticModel grad;
    double loss = logistic_loss(fit.model, x, y, config.l2, &grad);
    std::vector<double> p;
    for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
        fit.epochs = epoch;
        if (dot(grad, grad) == 0.0) {
            fit.converged = true;
            break;
        }
        // Newton direction from the exact softmax Hessian. The small ridge
        // covers the shift-invariant bias direction.
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dims), static_cast<Eigen::Index>(dims));
        Eigen::VectorXd xt(static_cast<Eigen::Index>(block));
        for (const auto& row : x) {
            softmax_scores(fit.model, row, p);
            for (std::size_t f = 0; f < features; ++f) xt[static_cast<Eigen::Index>(f)] = row[f];
            xt[static_cast<Eigen::Index>(features)] = 1.0;
            const Eigen::MatrixXd outer = xt * xt.transpose();
            for (std::size_t a = 0; a < classes; ++a) {
                for (std::size_t b = 0; b < classes; ++b) {
                    const double w = p[a] * ((a == b ? 1.0 : 0.0) - p[b]);
                    h.block(static_cast<Eigen::Index>(a * block), static_cast<Eigen::Index>(b * block),
                            static_cast<Eigen::Index>(block), static_cast<Eigen::Index>(block)) += w * outer;
                }
            }
        }
        h /= static_cast<double>(x.size());
        Eigen::VectorXd g(static_cast<Eigen::Index>(dims));
        for (std::size_t c = 0; c < classes; ++c) {
            for (std::size_t f = 0; f < features; ++f) {
                h(static_cast<Eigen::Index>(c * block + f), static_cast<Eigen::Index>(c * block + f)) += config.l2;
                g[static_cast<Eigen::Index>(c * block + f)] = grad.weights[c][f];
            }
            g[static_cast<Eigen::Index>(c * block + features)] = grad.bias[c];
        }
        h.diagonal().array() += 1e-9;
        const Eigen::VectorXd d = h.ldlt().solve(g);
        LogisticModel direction = zeros_like(fit.model);
        for (std::size_t c = 0; c < classes; ++c) {
            for (std::size_t f = 0; f < features; ++f) direction.weights[c][f] = d[static_cast<Eigen::Index>(c * block + f)];
            direction.bias[c] = d[static_cast<Eigen::Index>(c * block + features)];
        }
        double slope = dot(grad, direction);
        if (!(slope > 0.0) || !d.allFinite()) {
            direction = grad;
            slope = dot(grad, grad);
        }

        LogisticModel trial;
        double trial_loss = 0.0;
        double t = 1.0;
        while (true) {
            trial = step(fit.model, direction, t);
            trial_loss = logistic_loss(trial, x, y, config.l2);
            if (trial_loss <= loss - 1e-4 * t * slope || t < 1e-12) break;
            t *= 0.5;
        }
        const double change = std::abs(loss - trial_loss) / std::max(std::abs(loss), 1e-12);
        fit.model = std::move(trial);
        loss = logistic_loss(fit.model, x, y, config.l2, &grad);
        if (change < config.tolerance) {
            fit.converged = true;
            break;
        }
    }
    fit.loss = loss;
    if (!fit.converged) {
        warn("logistic regression did not converge in " + std::to_string(config.max_epochs) +
             " epochs; final loss " + format_number(loss));
    }
    return fit;
}

}  // namespace pcg
