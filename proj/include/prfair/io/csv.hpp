#pragma once

#include "prfair/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

namespace prfair::io {

/// Which columns of a header-bearing CSV file become coordinates.
struct DatasetSpec {
    std::filesystem::path      path;
    std::vector<std::string>   columns;  // names or 0-based indices; empty = every column except id_column
    bool                       standardize{false};
    std::optional<std::string> id_column;
};

namespace detail {

inline std::string trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r");
    return std::string{text.substr(first, last - first + 1)};
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string              field;
    bool                     quoted = false;
    for (std::size_t pos = 0; pos < line.size(); ++pos) {
        const char ch = line[pos];
        if (quoted) {
            if (ch == '"' && pos + 1 < line.size() && line[pos + 1] == '"') {
                field += '"';
                ++pos;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(trim(field));
            field.clear();
        } else {
            field += ch;
        }
    }
    fields.push_back(trim(field));
    return fields;
}

inline std::optional<double> parse_number(const std::string& text) {
    if (text.empty()) return std::nullopt;
    const char* begin = text.data();
    if (*begin == '+') ++begin;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

inline bool is_index(const std::string& text) {
    return !text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char ch) { return std::isdigit(ch); });
}

}  // namespace detail

/// Shortest decimal text that parses back to exactly `value`.
inline std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, ptr);
}

inline std::vector<Point> read_points(std::istream& in, const DatasetSpec& spec, const std::string& origin) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!detail::trim(line).empty()) {
            header = detail::split_csv_line(line);
            break;
        }
    }
    if (header.empty()) {
        throw InputError(origin + ": missing header row");
    }

    std::vector<std::size_t> selected;
    if (spec.columns.empty()) {
        for (std::size_t col = 0; col < header.size(); ++col) {
            if (!spec.id_column || header[col] != *spec.id_column) selected.push_back(col);
        }
    } else {
        for (const auto& wanted : spec.columns) {
            const auto found = std::find(header.begin(), header.end(), wanted);
            if (found != header.end()) {
                selected.push_back(static_cast<std::size_t>(found - header.begin()));
            } else if (detail::is_index(wanted) && std::stoul(wanted) < header.size()) {
                selected.push_back(std::stoul(wanted));
            } else {
                throw InputError(origin + ": no column '" + wanted + "'");
            }
        }
    }
    if (selected.empty()) {
        throw InputError(origin + ": no columns selected");
    }

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split_csv_line(line);
        std::vector<double> coords;
        coords.reserve(selected.size());
        for (const std::size_t col : selected) {
            const std::string cell = col < fields.size() ? fields[col] : std::string{};
            const auto        value = detail::parse_number(cell);
            if (!value) {
                throw InputError(origin + ": row " + std::to_string(line_no) + ", column '" + header[col] +
                                 "': not a finite number: '" + cell + "'");
            }
            coords.push_back(*value);
        }
        rows.push_back(std::move(coords));
    }
    if (rows.empty()) {
        throw InputError(origin + ": no data rows");
    }

    if (spec.standardize) {
        const double count = static_cast<double>(rows.size());
        for (std::size_t col = 0; col < selected.size(); ++col) {
            double mean = 0.0;
            for (const auto& row : rows) mean += row[col];
            mean /= count;
            double var = 0.0;
            for (const auto& row : rows) var += (row[col] - mean) * (row[col] - mean);
            const double sd = rows.size() > 1 ? std::sqrt(var / (count - 1.0)) : 0.0;
            for (auto& row : rows) row[col] = sd > 0.0 ? (row[col] - mean) / sd : 0.0;
        }
    }

    std::vector<Point> points;
    points.reserve(rows.size());
    for (auto& row : rows) points.emplace_back(std::move(row));
    return points;
}

inline std::vector<Point> load_points(const DatasetSpec& spec) {
    std::ifstream in{spec.path};
    if (!in) {
        throw InputError("cannot open dataset file '" + spec.path.string() + "'");
    }
    return read_points(in, spec, spec.path.string());
}

/// One agent per row; candidates are the agents themselves.
inline Instance load_csv(const DatasetSpec& spec, std::size_t k, Metric metric = Metric::euclidean) {
    return Instance::unconstrained(load_points(spec), k, metric);
}

inline void write_points(std::ostream& out, const std::vector<Point>& points) {
    const std::size_t dim = points.empty() ? 0 : points.front().dimension();
    for (std::size_t axis = 0; axis < dim; ++axis) {
        out << (axis == 0 ? "" : ",") << 'x' << axis;
    }
    out << '\n';
    for (const auto& p : points) {
        for (std::size_t axis = 0; axis < dim; ++axis) {
            out << (axis == 0 ? "" : ",") << format_double(p[axis]);
        }
        out << '\n';
    }
}

inline void write_points_file(const std::filesystem::path& path, const std::vector<Point>& points) {
    std::ofstream out{path};
    if (!out) {
        throw InputError("cannot write '" + path.string() + "'");
    }
    write_points(out, points);
}

}  // namespace prfair::io
