// csv.hpp — Deterministic CSV emission: 17 significant digits, '.' decimal
// separator, '\n' line endings, a single header row.

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace nmregress {

std::string format_g17(double value);

struct CsvColumn {
    std::string name;
    std::vector<double> values;
};

// Writes the table; all columns must share one length.
void write_csv(const std::string& path, const std::vector<CsvColumn>& columns);

// Two-column key,value table for run metadata.
void write_summary(const std::string& path,
                   const std::vector<std::pair<std::string, std::string>>& rows);

} // namespace nmregress
