#include "pcg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcg/error.hpp"

namespace pcg {

double quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw Error("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw Error("quantile must lie in [0, 1]");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

SummaryRow summarize(std::string name, std::span<const double> values, std::size_t missing_count) {
    SummaryRow row;
    row.name = std::move(name);
    row.missing_count = missing_count;
    std::vector<double> v;
    for (double x : values) {
        if (std::isnan(x)) {
            ++row.missing_count;
        } else {
            v.push_back(x);
        }
    }
    row.count = v.size();
    if (v.empty()) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.mean = row.std = row.median = row.iqr = row.min = row.max = nan;
        return row;
    }
    std::sort(v.begin(), v.end());
    double sum = 0.0;
    for (double x : v) sum += x;
    row.mean = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - row.mean) * (x - row.mean);
    row.std = std::sqrt(ss / static_cast<double>(v.size()));
    row.median = quantile_sorted(v, 0.5);
    row.iqr = quantile_sorted(v, 0.75) - quantile_sorted(v, 0.25);
    row.min = v.front();
    row.max = v.back();
    return row;
}

std::vector<SummaryRow> summarize(const FeatureTable& table) {
    std::vector<SummaryRow> rows;
    for (const auto& c : table.columns) {
        std::vector<double> present;
        std::size_t missing = 0;
        for (std::size_t i = 0; i < c.values.size(); ++i) {
            if (c.missing[i].empty()) {
                present.push_back(c.values[i]);
            } else {
                ++missing;
            }
        }
        rows.push_back(summarize(c.name, present, missing));
    }
    return rows;
}

Table summary_table(const std::vector<SummaryRow>& rows) {
    Table t;
    std::vector<std::string> names;
    std::vector<Cell> mean, std, median, iqr, min, max;
    std::vector<double> count, missing;
    auto cell = [](double v) -> Cell {
        if (std::isnan(v)) return Missing{"no values"};
        return v;
    };
    for (const auto& r : rows) {
        names.push_back(r.name);
        mean.push_back(cell(r.mean));
        std.push_back(cell(r.std));
        median.push_back(cell(r.median));
        iqr.push_back(cell(r.iqr));
        min.push_back(cell(r.min));
        max.push_back(cell(r.max));
        count.push_back(static_cast<double>(r.count));
        missing.push_back(static_cast<double>(r.missing_count));
    }
    t.add_column("feature", names);
    t.add_column("mean", std::move(mean));
    t.add_column("std", std::move(std));
    t.add_column("median", std::move(median));
    t.add_column("iqr", std::move(iqr));
    t.add_column("min", std::move(min));
    t.add_column("max", std::move(max));
    t.add_column("count", count);
    t.add_column("missing_count", missing);
    return t;
}

}  // namespace pcg
