#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "midi/common.hpp"

// Numeric CSV ingestion and emission.
//
// Dialect: comma separated, '.' decimal point, UTF-8, optional single
// header row (auto-detected: a first row with any non-numeric, non-missing
// cell is treated as the header). Missing values are empty cells or "NA"
// and parse to quiet NaN; consumers decide how to treat them.

namespace midi {

class CsvError : public std::runtime_error {
public:
    CsvError(std::string message, std::size_t row, std::size_t col)
        : std::runtime_error("row " + std::to_string(row) + ", column "
                             + std::to_string(col) + ": " + message),
          row_(row), col_(col)
    {
    }

    std::size_t row() const { return row_; }
    std::size_t col() const { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

/// Column-major numeric table. Missing cells are NaN.
struct NumericTable {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    bool has_header = false;

    std::size_t column_count() const { return columns.size(); }
    std::size_t row_count() const { return columns.empty() ? 0 : columns[0].size(); }
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline bool is_missing(std::string_view cell)
{
    return cell.empty() || cell == "NA";
}

/// Parses a full numeric token; returns false if the cell is not a number.
inline bool parse_number(std::string_view cell, double& out)
{
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

inline std::vector<std::string_view> split_line(std::string_view line)
{
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

} // namespace detail

/// Shortest representation that round-trips exactly.
inline std::string format_double(double v)
{
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

inline NumericTable read_numeric_csv(std::istream& in)
{
    NumericTable table;
    std::string line;
    std::size_t row_number = 0;
    bool first_row = true;

    while (std::getline(in, line)) {
        ++row_number;
        if (first_row && detail::trim(line).empty())
            continue; // leading blank lines
        if (!first_row && detail::trim(line).empty())
            continue;
        const auto cells = detail::split_line(line);

        if (first_row) {
            first_row = false;
            bool numeric_row = true;
            std::vector<double> parsed(cells.size());
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (detail::is_missing(cells[c])) {
                    parsed[c] = std::numeric_limits<double>::quiet_NaN();
                } else if (!detail::parse_number(cells[c], parsed[c])) {
                    numeric_row = false;
                    break;
                }
            }
            table.columns.resize(cells.size());
            table.names.resize(cells.size());
            if (numeric_row) {
                table.has_header = false;
                for (std::size_t c = 0; c < cells.size(); ++c) {
                    table.names[c] = "col" + std::to_string(c + 1);
                    table.columns[c].push_back(parsed[c]);
                }
            } else {
                table.has_header = true;
                for (std::size_t c = 0; c < cells.size(); ++c)
                    table.names[c] = std::string(cells[c]);
            }
            continue;
        }

        if (cells.size() != table.columns.size())
            throw CsvError("expected " + std::to_string(table.columns.size())
                               + " cells, found " + std::to_string(cells.size()),
                           row_number, cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            double v;
            if (detail::is_missing(cells[c])) {
                v = std::numeric_limits<double>::quiet_NaN();
            } else if (!detail::parse_number(cells[c], v)) {
                throw CsvError("cell '" + std::string(cells[c]) + "' is not numeric",
                               row_number, c + 1);
            }
            table.columns[c].push_back(v);
        }
    }

    if (table.columns.empty() || table.row_count() == 0)
        throw CsvError("no data rows", row_number, 1);
    return table;
}

inline NumericTable read_numeric_csv_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "' for reading");
    return read_numeric_csv(in);
}

/// Writes an x,y sample as CSV with full round-trip precision.
inline void write_xy_csv(std::ostream& os, std::span<const double> xs,
                         std::span<const double> ys)
{
    os << "x,y\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        os << format_double(xs[i]) << ',' << format_double(ys[i]) << '\n';
}

} // namespace midi
