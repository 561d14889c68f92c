#pragma once

// Deterministic CSV text: 17 significant digits, '.' separator, '\n' endings,
// '#' comment lines ahead of the header.

#include <string>
#include <string_view>
#include <vector>

namespace djc {

/// 17 significant digits in general notation; -0 prints as 0.
std::string format_number(double value);

class CsvTable {
public:
    void comment(std::string_view text);
    void set_header(std::vector<std::string> columns);
    void add_row(const std::vector<double>& values);
    /// Cells written verbatim; they must not contain ',' or newlines.
    void add_text_row(const std::vector<std::string>& cells);

    std::size_t columns() const { return header_.size(); }
    std::size_t rows() const { return rows_.size(); }

    std::string str() const;

private:
    std::vector<std::string> comments_;
    std::vector<std::string> header_;
    std::vector<std::string> rows_;
};

}  // namespace djc
