#include "nmregress/csv.hpp"

#include "nmregress/types.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nmregress {

std::string format_g17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_csv(const std::string& path, const std::vector<CsvColumn>& columns) {
    if (columns.empty()) throw std::invalid_argument("write_csv: no columns");
    const std::size_t rows = columns.front().values.size();
    for (const auto& col : columns) {
        if (col.values.size() != rows) throw std::invalid_argument("write_csv: ragged columns");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw numerical_error("write_csv: cannot open " + path);
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out << (c ? "," : "") << columns[c].name;
    }
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << (c ? "," : "") << format_g17(columns[c].values[r]);
        }
        out << '\n';
    }
    if (!out) throw numerical_error("write_csv: write failure on " + path);
}

void write_summary(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw numerical_error("write_summary: cannot open " + path);
    out << "key,value\n";
    for (const auto& [key, value] : rows) {
        out << key << ',' << value << '\n';
    }
    if (!out) throw numerical_error("write_summary: write failure on " + path);
}

} // namespace nmregress
