#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pcg/features.hpp"
#include "pcg/table.hpp"

namespace pcg {

/// Statistics over the non-missing values of one column. All values are NaN
/// when count is 0.
struct SummaryRow {
    std::string name;
    double mean = 0.0;
    double std = 0.0;  // population
    double median = 0.0;
    double iqr = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;
    std::size_t missing_count = 0;
};

/// Linear interpolation between closest ranks on sorted data: position
/// q * (n - 1).
double quantile_sorted(std::span<const double> sorted, double q);

SummaryRow summarize(std::string name, std::span<const double> values, std::size_t missing_count = 0);
std::vector<SummaryRow> summarize(const FeatureTable& table);

/// One row per feature.
Table summary_table(const std::vector<SummaryRow>& rows);

}  // namespace pcg
