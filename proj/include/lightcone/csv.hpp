#pragma once

// Numeric tables with a fixed text form: scientific notation, six
// significant digits. Values are quantized on insertion, so writing a table
// and parsing it back reproduces it exactly.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace lightcone::csv {

inline std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", x);
    return buf;
}

inline double parse_number(const std::string& s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw ConfigError("csv: not a number: '" + s + "'");
    return v;
}

/// Rounds to the value the text form represents.
inline double quantize(double x) { return parse_number(format_number(x)); }

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    Table() = default;
    explicit Table(std::vector<std::string> cols) : columns(std::move(cols)) {}

    void add_row(std::vector<double> values) {
        if (values.size() != columns.size())
            throw ConfigError("csv: row has " + std::to_string(values.size()) + " values, expected " +
                              std::to_string(columns.size()));
        for (auto& v : values) v = quantize(v);
        rows.push_back(std::move(values));
    }

    bool operator==(const Table& o) const {
        if (columns != o.columns || rows.size() != o.rows.size()) return false;
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < rows[i].size(); ++j) {
                const double a = rows[i][j];
                const double b = o.rows[i][j];
                if (!(a == b || (std::isnan(a) && std::isnan(b)))) return false;
            }
        return true;
    }
};

inline void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << t.columns[j];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_number(row[j]);
        os << '\n';
    }
}

inline std::string to_csv(const Table& t) {
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

namespace detail {
inline std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}
}  // namespace detail

/// Reads one table: a header line, then rows up to a blank line or EOF.
inline Table read_csv(std::istream& is) {
    Table t;
    std::string line;
    while (std::getline(is, line) && line.find_first_not_of(" \t\r") == std::string::npos) {}
    if (line.empty()) throw ConfigError("csv: missing header");
    t.columns = detail::split(line);
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) break;
        const auto cells = detail::split(line);
        if (cells.size() != t.columns.size()) throw ConfigError("csv: ragged row: " + line);
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_number(c));
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline Table parse_csv(const std::string& text) {
    std::istringstream is(text);
    return read_csv(is);
}

/// Right-aligned plain-text rendering.
inline void write_text(std::ostream& os, const Table& t) {
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t j = 0; j < t.columns.size(); ++j) width[j] = std::max<std::size_t>(t.columns[j].size(), 12);
    auto pad = [&](const std::string& s, std::size_t w) { return std::string(w > s.size() ? w - s.size() : 0, ' ') + s; };
    for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? "  " : "") << pad(t.columns[j], width[j]);
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "  " : "") << pad(format_number(row[j]), width[j]);
        os << '\n';
    }
}

}  // namespace lightcone::csv
