#include "pcg/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcg/error.hpp"

namespace pcg {
namespace {

std::vector<double> sorted(std::span<const double> x) {
    std::vector<double> v(x.begin(), x.end());
    std::sort(v.begin(), v.end());
    return v;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v, double mean) {
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

MatchResult match(std::span<const double> detections_s, std::span<const double> labels_s, double tolerance_ms) {
    if (!(tolerance_ms >= 0.0)) throw Error("tolerance must be non-negative");
    const auto d = sorted(detections_s);
    const auto l = sorted(labels_s);
    const double tol = tolerance_ms / 1000.0 + 1e-9;

    MatchResult r;
    r.labels = l.size();
    std::vector<bool> used(l.size(), false);
    std::size_t lo = 0;  // labels before lo are out of reach for every later detection
    for (std::size_t i = 0; i < d.size(); ++i) {
        while (lo < l.size() && l[lo] < d[i] - tol) ++lo;
        std::size_t hit = l.size();
        for (std::size_t j = lo; j < l.size() && l[j] <= d[i] + tol; ++j) {
            if (!used[j]) {
                hit = j;
                break;
            }
        }
        if (hit < l.size()) {
            used[hit] = true;
            ++r.tp;
            r.pairs.emplace_back(i, hit);
        } else {
            ++r.fp;
        }
        if (!l.empty()) {
            const auto it = std::lower_bound(l.begin(), l.end(), d[i]);
            double best = std::numeric_limits<double>::infinity();
            if (it != l.end()) best = *it - d[i];
            if (it != l.begin()) best = std::min(best, d[i] - *(it - 1));
            r.abs_errors_ms.push_back(best * 1000.0);
        }
    }
    return r;
}

MetricsReport metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t labels, double tolerance_ms) {
    if (tp + fp == 0) throw Error("no detections: PPV is undefined");
    if (tp > labels) throw Error("more true positives than labels");
    MetricsReport m;
    m.tp = tp;
    m.fp = fp;
    m.labels = labels;
    m.tolerance_ms = tolerance_ms;
    m.ppv = static_cast<double>(tp) / static_cast<double>(tp + fp);
    m.tpr = labels > 0 ? static_cast<double>(tp) / static_cast<double>(labels) : 0.0;
    m.f1 = m.ppv + m.tpr > 0.0 ? 2.0 * m.ppv * m.tpr / (m.ppv + m.tpr) : 0.0;
    return m;
}

MetricsReport metrics(std::span<const MatchResult> results, double tolerance_ms) {
    if (results.empty()) throw Error("no match results to summarize");
    std::size_t tp = 0, fp = 0, labels = 0;
    std::vector<double> errors;
    for (const auto& r : results) {
        tp += r.tp;
        fp += r.fp;
        labels += r.labels;
        errors.insert(errors.end(), r.abs_errors_ms.begin(), r.abs_errors_ms.end());
    }
    auto m = metrics_from_counts(tp, fp, labels, tolerance_ms);
    if (!errors.empty()) {
        m.mae_mean_ms = mean_of(errors);
        m.mae_std_ms = std_of(errors, m.mae_mean_ms);
    }
    return m;
}

std::vector<double> default_tolerance_grid() {
    std::vector<double> g;
    for (int t = 5; t <= 90; ++t) g.push_back(t);
    return g;
}

ToleranceCurve score_vs_tolerance(std::span<const std::vector<double>> detections,
                                  std::span<const std::vector<double>> labels,
                                  std::span<const double> grid_ms, double threshold) {
    if (detections.size() != labels.size()) throw Error("detection and label lists differ in count");
    for (std::size_t i = 1; i < grid_ms.size(); ++i) {
        if (!(grid_ms[i] > grid_ms[i - 1])) throw Error("tolerance grid must be increasing");
    }
    ToleranceCurve c;
    c.threshold = threshold;
    for (double tol : grid_ms) {
        std::size_t tp = 0, fp = 0, m = 0;
        for (std::size_t i = 0; i < detections.size(); ++i) {
            const auto r = match(detections[i], labels[i], tol);
            tp += r.tp;
            fp += r.fp;
            m += r.labels;
        }
        double ppv = 0.0, f1 = 0.0;
        if (tp + fp > 0) {
            const auto rep = metrics_from_counts(tp, fp, m, tol);
            ppv = rep.ppv;
            f1 = rep.f1;
        }
        c.tolerances_ms.push_back(tol);
        c.ppv.push_back(ppv);
        c.f1.push_back(f1);
        if (!c.threshold_ms && f1 >= threshold) c.threshold_ms = tol;
    }
    return c;
}

ToleranceCurve score_vs_tolerance(std::span<const double> detections, std::span<const double> labels,
                                  std::span<const double> grid_ms, double threshold) {
    const std::vector<std::vector<double>> d{std::vector<double>(detections.begin(), detections.end())};
    const std::vector<std::vector<double>> l{std::vector<double>(labels.begin(), labels.end())};
    return score_vs_tolerance(d, l, grid_ms, threshold);
}

BlandAltman bland_altman_diffs(std::span<const double> detections_s, std::span<const double> labels_s,
                               double tolerance_ms) {
    const auto d = sorted(detections_s);
    const auto l = sorted(labels_s);
    const auto r = match(d, l, tolerance_ms);
    if (r.pairs.size() < 2) throw Error("Bland-Altman analysis needs at least 2 matched pairs");

    std::vector<std::pair<double, double>> all;
    for (std::size_t k = 1; k < r.pairs.size(); ++k) {
        const double dl = (l[r.pairs[k].second] - l[r.pairs[k - 1].second]) * 1000.0;
        const double dd = (d[r.pairs[k].first] - d[r.pairs[k - 1].first]) * 1000.0;
        all.emplace_back(0.5 * (dl + dd), dl - dd);
    }
    std::vector<double> diffs;
    for (const auto& p : all) diffs.push_back(p.second);
    const double m0 = mean_of(diffs);
    const double s0 = std_of(diffs, m0);

    BlandAltman ba;
    diffs.clear();
    for (const auto& p : all) {
        if (s0 > 0.0 && std::abs(p.second - m0) > 3.0 * s0) {
            ++ba.outliers;
        } else {
            ba.points.push_back(p);
            diffs.push_back(p.second);
        }
    }
    ba.mean_ms = mean_of(diffs);
    ba.std_ms = std_of(diffs, ba.mean_ms);
    ba.upper_ms = ba.mean_ms + 1.96 * ba.std_ms;
    ba.lower_ms = ba.mean_ms - 1.96 * ba.std_ms;
    return ba;
}

Table metrics_table(const std::vector<MetricsReport>& reports) {
    Table t;
    std::vector<double> tol, tp, fp, labels, ppv, tpr, f1, mae, mae_std;
    for (const auto& r : reports) {
        tol.push_back(r.tolerance_ms);
        tp.push_back(static_cast<double>(r.tp));
        fp.push_back(static_cast<double>(r.fp));
        labels.push_back(static_cast<double>(r.labels));
        ppv.push_back(r.ppv);
        tpr.push_back(r.tpr);
        f1.push_back(r.f1);
        mae.push_back(r.mae_mean_ms);
        mae_std.push_back(r.mae_std_ms);
    }
    t.add_column("tolerance_ms", tol);
    t.add_column("tp", tp);
    t.add_column("fp", fp);
    t.add_column("labels", labels);
    t.add_column("ppv", ppv);
    t.add_column("tpr", tpr);
    t.add_column("f1", f1);
    t.add_column("mae_mean_ms", mae);
    t.add_column("mae_std_ms", mae_std);
    return t;
}

Table curve_table(const ToleranceCurve& curve) {
    Table t;
    t.add_column("tolerance_ms", curve.tolerances_ms);
    t.add_column("f1", curve.f1);
    t.add_column("ppv", curve.ppv);
    std::vector<Cell> marker;
    for (double tol : curve.tolerances_ms) {
        marker.emplace_back(curve.threshold_ms && *curve.threshold_ms == tol ? 1.0 : 0.0);
    }
    t.add_column("threshold_crossing", std::move(marker));
    return t;
}

Table bland_altman_table(const BlandAltman& ba) {
    Table t;
    std::vector<double> mean, diff;
    for (const auto& [m, d] : ba.points) {
        mean.push_back(m);
        diff.push_back(d);
    }
    const std::size_t n = ba.points.size();
    t.add_column("mean_ms", mean);
    t.add_column("diff_ms", diff);
    t.add_column("bias_ms", std::vector<double>(n, ba.mean_ms));
    t.add_column("upper_ms", std::vector<double>(n, ba.upper_ms));
    t.add_column("lower_ms", std::vector<double>(n, ba.lower_ms));
    t.add_column("outliers_removed", std::vector<double>(n, static_cast<double>(ba.outliers)));
    return t;
}

}  // namespace pcg
