#include "vvrate/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace vvrate {

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("csv: cannot write " + path);
}

std::string CsvWriter::format(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        out_ << (i ? "," : "") << format(values[i]);
    out_ << "\n";
}

void CsvWriter::mixed_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
        out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
}

}  // namespace vvrate
