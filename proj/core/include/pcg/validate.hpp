#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pcg/table.hpp"

namespace pcg {

/// Outcome of matching one recording's detections against its labels.
struct MatchResult {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t labels = 0;
    /// |d - nearest label| in ms for every detection, in time order.
    std::vector<double> abs_errors_ms;
    /// (detection index, label index) of each true positive, both into the
    /// time-sorted inputs.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    bool operator==(const MatchResult&) const = default;
};

/// One-to-one matching in increasing detection time: each detection takes the
/// earliest unmatched label within +-tolerance. Inputs are sorted internally.
MatchResult match(std::span<const double> detections_s, std::span<const double> labels_s, double tolerance_ms);

struct MetricsReport {
    double ppv = 0.0;
    double tpr = 0.0;
    double f1 = 0.0;
    double mae_mean_ms = 0.0;
    double mae_std_ms = 0.0;
    double tolerance_ms = 0.0;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t labels = 0;
};

/// Pools counts and error lists over recordings. Throws pcg::Error when there
/// are no detections at all.
MetricsReport metrics(std::span<const MatchResult> results, double tolerance_ms);
/// Same arithmetic from raw counts, with no error list.
MetricsReport metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t labels, double tolerance_ms);

/// 5, 6, ..., 90 ms.
std::vector<double> default_tolerance_grid();

struct ToleranceCurve {
    std::vector<double> tolerances_ms;
    std::vector<double> f1;
    std::vector<double> ppv;
    /// Smallest tolerance whose F1 reaches `threshold`.
    std::optional<double> threshold_ms;
    double threshold = 0.0;
};

/// Pooled curve over several recordings (detections[i] pairs with labels[i]).
ToleranceCurve score_vs_tolerance(std::span<const std::vector<double>> detections,
                                  std::span<const std::vector<double>> labels,
                                  std::span<const double> grid_ms, double threshold = 0.8);
ToleranceCurve score_vs_tolerance(std::span<const double> detections, std::span<const double> labels,
                                  std::span<const double> grid_ms, double threshold = 0.8);

struct BlandAltman {
    /// ((dL + dD) / 2, dL - dD) in ms for consecutive matched pairs, outliers removed.
    std::vector<std::pair<double, double>> points;
    double mean_ms = 0.0;
    double std_ms = 0.0;
    double upper_ms = 0.0;  // mean + 1.96 std
    double lower_ms = 0.0;
    std::size_t outliers = 0;
};

/// Consecutive differences of matched label/detection sequences. Throws
/// pcg::Error with fewer than 2 matched pairs.
BlandAltman bland_altman_diffs(std::span<const double> detections_s, std::span<const double> labels_s,
                               double tolerance_ms = 30.0);

Table metrics_table(const std::vector<MetricsReport>& reports);
Table curve_table(const ToleranceCurve& curve);
Table bland_altman_table(const BlandAltman& ba);

}  // namespace pcg
