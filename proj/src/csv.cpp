#include "djc/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "djc/error.hpp"

namespace djc {

std::string format_number(double value) {
    if (value == 0.0) return "0";
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 40> buf{};
    const auto res =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

void CsvTable::comment(std::string_view text) {
    // one '#' line per physical line
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find('\n', start);
        const std::string_view line =
            text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
        comments_.push_back(line.empty() ? "#" : "# " + std::string(line));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
}

void CsvTable::set_header(std::vector<std::string> columns) {
    if (!rows_.empty()) throw Error(ErrorCode::UsageError, "header must precede rows");
    header_ = std::move(columns);
}

void CsvTable::add_row(const std::vector<double>& values) {
    if (values.size() != header_.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "row has " + std::to_string(values.size()) + " values for " +
                        std::to_string(header_.size()) + " columns");
    }
    std::string line;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) line += ',';
        line += format_number(values[k]);
    }
    rows_.push_back(std::move(line));
}

void CsvTable::add_text_row(const std::vector<std::string>& cells) {
    if (cells.size() != header_.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "row has " + std::to_string(cells.size()) + " cells for " +
                        std::to_string(header_.size()) + " columns");
    }
    std::string line;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (cells[k].find_first_of(",\n") != std::string::npos) {
            throw Error(ErrorCode::UsageError, "CSV cell contains a separator");
        }
        if (k) line += ',';
        line += cells[k];
    }
    rows_.push_back(std::move(line));
}

std::string CsvTable::str() const {
    std::string out;
    for (const std::string& c : comments_) out += c + '\n';
    for (std::size_t k = 0; k < header_.size(); ++k) {
        if (k) out += ',';
        out += header_[k];
    }
    if (!header_.empty()) out += '\n';
    for (const std::string& r : rows_) out += r + '\n';
    return out;
}

}  // namespace djc
