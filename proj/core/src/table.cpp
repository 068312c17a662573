#include "pcg/table.hpp"

#include "pcg/error.hpp"

namespace pcg {

void Table::add_column(std::string name, std::vector<Cell> values) {
    names.push_back(std::move(name));
    columns.push_back(std::move(values));
}

void Table::add_column(std::string name, const std::vector<double>& values) {
    add_column(std::move(name), std::vector<Cell>(values.begin(), values.end()));
}

void Table::add_column(std::string name, const std::vector<std::string>& values) {
    add_column(std::move(name), std::vector<Cell>(values.begin(), values.end()));
}

std::size_t Table::row_count() const {
    if (names.size() != columns.size()) {
        throw Error("table has " + std::to_string(names.size()) + " names but " +
                    std::to_string(columns.size()) + " columns");
    }
    if (columns.empty()) return 0;
    const std::size_t rows = columns.front().size();
    for (std::size_t c = 1; c < columns.size(); ++c) {
        if (columns[c].size() != rows) {
            throw Error("column '" + names[c] + "' has " + std::to_string(columns[c].size()) +
                        " rows, expected " + std::to_string(rows));
        }
    }
    return rows;
}

}  // namespace pcg
