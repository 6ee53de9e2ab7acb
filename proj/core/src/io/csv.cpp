#include "rapt/io/csv.hpp"

#include <cstdio>
#include <ostream>

namespace rapt::io {

std::string csv_number(double value) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.16e", value);
    return buffer;
}

void CsvWriter::header(const std::vector<std::string>& names) { row(names); }

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

} // namespace rapt::io
