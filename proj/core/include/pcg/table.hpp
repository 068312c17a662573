#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace pcg {

/// Explicit not-a-value marker with the reason it is missing.
struct Missing {
    std::string reason;
    bool operator==(const Missing&) const = default;
};

using Cell = std::variant<double, std::string, Missing>;

/// Column-oriented table used for every CSV the toolkit writes.
struct Table {
    std::vector<std::string> names;
    std::vector<std::vector<Cell>> columns;

    void add_column(std::string name, std::vector<Cell> values);
    void add_column(std::string name, const std::vector<double>& values);
    void add_column(std::string name, const std::vector<std::string>& values);

    /// Row count; throws pcg::Error if columns differ in length.
    std::size_t row_count() const;
};

}  // namespace pcg
