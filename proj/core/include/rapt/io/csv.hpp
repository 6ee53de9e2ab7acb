#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rapt::io {

/// Scientific notation with 17 significant digits, '.' decimal point.
std::string csv_number(double value);

/// Minimal CSV emitter: header row, LF line endings, no quoting (cells
/// must not contain commas).
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(const std::vector<std::string>& names);
    void row(const std::vector<std::string>& cells);

private:
    std::ostream& out_;
};

} // namespace rapt::io
