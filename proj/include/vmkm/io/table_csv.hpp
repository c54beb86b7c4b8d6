#ifndef VMKM_IO_TABLE_CSV_HPP
#define VMKM_IO_TABLE_CSV_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "../error.hpp"
#include "../harness.hpp"
#include "csv.hpp"
#include "files.hpp"

namespace vmkm::io {

namespace detail {

inline std::string optional_cell(const std::optional<double>& value) {
    return value ? format_real(*value) : std::string{};
}

inline std::vector<std::string_view> split_line(std::string_view line) {
    std::vector<std::string_view> fields;
    while (true) {
        const auto comma = line.find(',');
        fields.push_back(trim(line.substr(0, comma)));
        if (comma == std::string_view::npos) {
            return fields;
        }
        line.remove_prefix(comma + 1);
    }
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    while (!text.empty()) {
        const auto end = text.find('\n');
        if (!trim(text.substr(0, end)).empty()) {
            lines.push_back(text.substr(0, end));
        }
        text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    }
    return lines;
}

}  // namespace detail

/// Header `dataset,<algorithms...>,row_minimum`; the last column names the
/// algorithm holding the row's smallest mean MSE.
inline std::string format_comparison_csv(const ComparisonTable& table) {
    std::string out = "dataset";
    for (const auto& a : table.algorithms) {
        out += "," + a;
    }
    out += ",row_minimum\n";
    for (std::size_t r = 0; r < table.datasets.size(); ++r) {
        out += table.datasets[r];
        for (const auto& cell : table.cells[r]) {
            out += "," + detail::optional_cell(cell);
        }
        out += ",";
        if (table.row_minimum[r]) {
            out += table.algorithms[*table.row_minimum[r]];
        }
        out += "\n";
    }
    return out;
}

inline ComparisonTable parse_comparison_csv(std::string_view text) {
    const auto lines = detail::split_lines(text);
    if (lines.empty()) {
        throw Error(ErrorKind::ParseError, "comparison table is empty");
    }
    const auto header = detail::split_line(lines[0]);
    if (header.size() < 3 || header.front() != "dataset" || header.back() != "row_minimum") {
        throw Error(ErrorKind::ParseError, "line 1: unexpected comparison table header");
    }
    ComparisonTable table;
    for (std::size_t c = 1; c + 1 < header.size(); ++c) {
        table.algorithms.emplace_back(header[c]);
    }
    for (std::size_t l = 1; l < lines.size(); ++l) {
        const auto fields = detail::split_line(lines[l]);
        if (fields.size() != header.size()) {
            throw Error(ErrorKind::RaggedDimensions, "line " + std::to_string(l + 1) + ": wrong field count");
        }
        table.datasets.emplace_back(fields.front());
        std::vector<std::optional<double>> row;
        for (std::size_t c = 1; c + 1 < fields.size(); ++c) {
            if (fields[c].empty()) {
                row.emplace_back();
            } else {
                row.emplace_back(detail::parse_cell(fields[c], l + 1, c + 1));
            }
        }
        table.cells.push_back(std::move(row));
        std::optional<std::size_t> minimum;
        for (std::size_t c = 0; c < table.algorithms.size(); ++c) {
            if (table.algorithms[c] == fields.back()) {
                minimum = c;
            }
        }
        table.row_minimum.push_back(minimum);
    }
    return table;
}

/// Header `trial,seed,<algorithms...>,row_minimum`, rows ordered by trial index.
inline std::string format_sensitivity_series_csv(const SensitivityResult& result) {
    std::string out = "trial,seed";
    for (Algorithm a : result.algorithms) {
        out += ",";
        out += algorithm_name(a);
    }
    out += ",row_minimum\n";
    for (const auto& trial : result.trials) {
        out += std::to_string(trial.trial_index) + "," + std::to_string(trial.seed);
        for (const auto& value : trial.final_mse) {
            out += "," + detail::optional_cell(value);
        }
        out += ",";
        if (const auto m = row_minimum_of(trial.final_mse)) {
            out += algorithm_name(result.algorithms[*m]);
        }
        out += "\n";
    }
    return out;
}

/// One row per algorithm with the box-plot statistics; stats of an algorithm
/// without successful trials are left empty.
inline std::string format_sensitivity_summary_csv(const SensitivityResult& result) {
    std::string out = "algorithm,count,mean,median,stddev,min,q1,q3,max\n";
    for (std::size_t a = 0; a < result.algorithms.size(); ++a) {
        const auto& s = result.per_algorithm_summary[a];
        out += std::string(algorithm_name(result.algorithms[a])) + "," + std::to_string(s.count);
        for (double v : {s.mean, s.median, s.stddev, s.min, s.q1, s.q3, s.max}) {
            out += "," + (s.count == 0 ? std::string{} : format_real(v));
        }
        out += "\n";
    }
    return out;
}

inline void write_table_csv(const std::filesystem::path& path, const ComparisonTable& table) {
    write_file_atomic(path, format_comparison_csv(table));
}

inline void write_table_csv(const std::filesystem::path& path, const SensitivityResult& result) {
    write_file_atomic(path, format_sensitivity_series_csv(result));
}

}  // namespace vmkm::io

#endif  // VMKM_IO_TABLE_CSV_HPP
