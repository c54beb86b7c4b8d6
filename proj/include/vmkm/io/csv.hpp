#ifndef VMKM_IO_CSV_HPP
#define VMKM_IO_CSV_HPP

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "../dataset.hpp"
#include "../error.hpp"
#include "files.hpp"

namespace vmkm::io {

struct CsvOptions {
    char delimiter = ',';
    bool has_header = false;
};

namespace detail {

inline std::string_view trim(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    return text;
}

inline double parse_cell(std::string_view cell, std::size_t line, std::size_t column) {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') {
        cell.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                                               ": cannot parse '" + std::string(cell) + "' as a number");
    }
    return value;
}

}  // namespace detail

/// Parses CSV text: one element per row, one feature per column. Blank lines
/// are skipped; positions in errors are 1-based.
inline Dataset parse_csv_dataset(std::string_view text, const CsvOptions& options = {}) {
    std::vector<std::vector<double>> rows;
    std::optional<std::size_t> width;
    std::size_t line_number = 0;
    bool header_pending = options.has_header;
    while (!text.empty()) {
        const auto end = text.find('\n');
        std::string_view line = text.substr(0, end);
        text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
        ++line_number;
        if (detail::trim(line).empty()) {
            continue;
        }
        if (header_pending) {
            header_pending = false;
            continue;
        }
        std::vector<double> row;
        std::size_t column = 1;
        while (true) {
            const auto split = line.find(options.delimiter);
            row.push_back(detail::parse_cell(line.substr(0, split), line_number, column));
            if (split == std::string_view::npos) {
                break;
            }
            line.remove_prefix(split + 1);
            ++column;
        }
        if (width && row.size() != *width) {
            throw Error(ErrorKind::RaggedDimensions, "line " + std::to_string(line_number) + " has " +
                                                         std::to_string(row.size()) + " fields, expected " +
                                                         std::to_string(*width));
        }
        width = row.size();
        rows.push_back(std::move(row));
    }
    return validate_dataset(rows);
}

inline Dataset read_csv_dataset(const std::filesystem::path& path, const CsvOptions& options = {}) {
    return parse_csv_dataset(read_file(path), options);
}

inline std::string format_csv_dataset(const Dataset& ds, char delimiter = ',') {
    std::string out;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto row = ds.element(i);
        for (Eigen::Index c = 0; c < row.size(); ++c) {
            if (c > 0) {
                out += delimiter;
            }
            out += format_real(row(c));
        }
        out += '\n';
    }
    return out;
}

inline void write_csv_dataset(const std::filesystem::path& path, const Dataset& ds) {
    write_file_atomic(path, format_csv_dataset(ds));
}

}  // namespace vmkm::io

#endif  // VMKM_IO_CSV_HPP
