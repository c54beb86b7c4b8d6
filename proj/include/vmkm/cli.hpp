#ifndef VMKM_CLI_HPP
#define VMKM_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dataset.hpp"
#include "error.hpp"
#include "harness.hpp"
#include "init.hpp"
#include "io/csv.hpp"
#include "io/files.hpp"
#include "io/pgm.hpp"
#include "io/report_json.hpp"
#include "io/table_csv.hpp"

namespace vmkm::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 2, kIo = 3, kData = 4, kInternal = 5 };

enum class Command { Cluster, Compare, Sensitivity, Segment };

struct CliConfig {
    Command command = Command::Cluster;
    std::vector<std::filesystem::path> inputs;
    std::filesystem::path output_dir = ".";
    std::vector<std::string> algorithms;
    std::optional<std::size_t> k;
    std::uint64_t seed = 0;
    std::optional<double> alpha0;
    std::optional<std::size_t> trials;
    std::optional<double> gamma;
    std::optional<std::size_t> max_iterations;
    bool strict_eq10 = false;
    char delimiter = ',';
    bool has_header = false;
    unsigned workers = 0;
};

inline int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidParameter:
        case ErrorKind::NonPositiveGamma:
        case ErrorKind::KTooLarge: return kUsage;
        case ErrorKind::IoError: return kIo;
        case ErrorKind::BadClusterIndex: return kInternal;
        default: return kData;
    }
}

inline std::vector<Algorithm> resolve_algorithms(const std::vector<std::string>& names,
                                                 const std::vector<Algorithm>& fallback) {
    if (names.empty()) {
        return fallback;
    }
    std::vector<Algorithm> out;
    for (const auto& name : names) {
        const auto a = parse_algorithm(name);
        if (!a) {
            throw Error(ErrorKind::InvalidParameter,
                        "unknown algorithm '" + name + "'; supported: " + supported_algorithms());
        }
        out.push_back(*a);
    }
    return out;
}

/// Checks the config-level invariants and builds the algorithm parameters.
inline AlgorithmConfig algorithm_config(const CliConfig& config) {
    if (config.inputs.empty()) {
        throw Error(ErrorKind::InvalidParameter, "--input is required");
    }
    if (config.k && *config.k < 1) {
        throw Error(ErrorKind::InvalidParameter, "--k must be at least 1");
    }
    if (config.trials && *config.trials < 1) {
        throw Error(ErrorKind::InvalidParameter, "--trials must be at least 1");
    }
    if (config.max_iterations && *config.max_iterations < 1) {
        throw Error(ErrorKind::InvalidParameter, "--max-iter must be at least 1");
    }
    AlgorithmConfig out;
    if (config.alpha0) {
        if (!(*config.alpha0 > 0.0 && *config.alpha0 < 1.0 / 3.0)) {
            throw Error(ErrorKind::InvalidParameter, "--alpha0 must lie in the open interval (0, 1/3)");
        }
        out.vmkm.alpha0 = *config.alpha0;
        out.baseline.alpha0 = *config.alpha0;
    }
    if (config.gamma) {
        if (!(*config.gamma > 0.0)) {
            throw Error(ErrorKind::NonPositiveGamma, "--gamma must be positive");
        }
        out.baseline.rbf_gamma = config.gamma;
    }
    if (config.max_iterations) {
        out.vmkm.max_main_iterations = *config.max_iterations;
        out.baseline.max_iterations = *config.max_iterations;
    }
    out.vmkm.strict_eq10 = config.strict_eq10;
    out.vmkm.seed = config.seed;
    out.baseline.seed = config.seed;
    return out;
}

/// `.pgm` files are decoded as images, anything else as CSV.
inline Dataset load_dataset(const std::filesystem::path& path, const CliConfig& config) {
    if (path.extension() == ".pgm") {
        return io::read_pgm(path);
    }
    return io::read_csv_dataset(path, io::CsvOptions{config.delimiter, config.has_header});
}

inline io::LabelMap label_map_of(const RunReport& report, const Dataset& ds) {
    return io::LabelMap{report.final_state.assignments, report.final_state.k, ds.image_shape()};
}

/// Runs `body` and maps failures to exit codes with a diagnostic on `err`.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return std::forward<Body>(body)();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

inline int cmd_cluster(const CliConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto params = algorithm_config(config);
        const auto algorithms = resolve_algorithms(config.algorithms, {Algorithm::Vmkm});
        if (algorithms.size() != 1) {
            throw Error(ErrorKind::InvalidParameter, "cluster runs exactly one algorithm");
        }
        const Dataset ds = load_dataset(config.inputs.front(), config);
        const auto centers = init_centers_random(ds, config.k.value_or(5), config.seed);
        const RunReport report = run_algorithm(algorithms.front(), ds, centers, params);

        const auto report_text = io::format_report_json(report);
        const auto labels_text = io::format_labels_csv(label_map_of(report, ds));
        io::write_file_atomic(config.output_dir / "report.json", report_text);
        io::write_file_atomic(config.output_dir / "labels.csv", labels_text);
        out << "algorithm=" << report.algorithm << " mse=" << io::format_real(report.mse)
            << " termination_reason=" << to_string(report.termination_reason) << "\n";
        return int{kSuccess};
    });
}

/**
 * @brief Every selected algorithm on every input, from shared initial centers.
 *
 * Trial t of a dataset draws its centers with seed `seed + t`; a cell is the
 * mean MSE over its trials and is absent when any of its runs failed.
 */
inline int cmd_compare(const CliConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto params = algorithm_config(config);
        const auto algorithms = resolve_algorithms(
            config.algorithms, std::vector<Algorithm>(std::begin(kAllAlgorithms), std::end(kAllAlgorithms)));
        const std::size_t trials = config.trials.value_or(1);
        const std::size_t k = config.k.value_or(5);

        std::vector<CellResult> cells;
        std::vector<std::pair<std::string, std::string>> files;
        std::size_t succeeded = 0;
        for (const auto& input : config.inputs) {
            const std::string stem = input.stem().string();
            std::optional<Dataset> ds;
            std::vector<std::vector<Point>> centers;
            try {
                ds = load_dataset(input, config);
                for (std::size_t t = 0; t < trials; ++t) {
                    centers.push_back(init_centers_random(*ds, k, config.seed + t));
                }
            } catch (const Error& e) {
                err << "skipping " << input.string() << ": " << e.what() << "\n";
                ds.reset();
            }
            for (Algorithm a : algorithms) {
                CellResult cell{stem, std::string(algorithm_name(a)), {}};
                if (ds) {
                    try {
                        for (std::size_t t = 0; t < trials; ++t) {
                            AlgorithmConfig local = params;
                            local.vmkm.seed = config.seed + t;
                            local.baseline.seed = config.seed + t;
                            cell.reports.push_back(run_algorithm(a, *ds, centers[t], local));
                        }
                    } catch (const Error& e) {
                        err << stem << "/" << cell.algorithm << " failed: " << e.what() << "\n";
                        cell.reports.clear();
                    }
                }
                for (std::size_t t = 0; t < cell.reports.size(); ++t) {
                    std::string name = stem + "_" + cell.algorithm;
                    if (trials > 1) {
                        name += "_trial" + std::to_string(t);
                    }
                    files.emplace_back("reports/" + name + ".json", io::format_report_json(cell.reports[t]));
                }
                succeeded += cell.reports.empty() ? 0 : 1;
                cells.push_back(std::move(cell));
            }
        }
        const auto table = build_comparison_table(cells);
        files.emplace_back("comparison.csv", io::format_comparison_csv(table));
        if (succeeded == 0) {
            err << "no comparison cell succeeded\n";
            return int{kData};
        }
        for (const auto& [name, content] : files) {
            io::write_file_atomic(config.output_dir / name, content);
        }
        out << io::format_comparison_csv(table);
        return int{kSuccess};
    });
}

inline int cmd_sensitivity(const CliConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto params = algorithm_config(config);
        const auto algorithms = resolve_algorithms(config.algorithms, {Algorithm::Vmkm, Algorithm::KMeans});
        const Dataset ds = load_dataset(config.inputs.front(), config);
        const auto result = run_sensitivity(ds, algorithms, config.k.value_or(5), config.trials.value_or(20),
                                            config.seed, params, config.workers);
        std::size_t succeeded = 0;
        for (const auto& s : result.per_algorithm_summary) {
            succeeded += s.count;
        }
        if (succeeded == 0) {
            err << "every sensitivity run failed\n";
            return int{kData};
        }
        const auto series = io::format_sensitivity_series_csv(result);
        const auto summary = io::format_sensitivity_summary_csv(result);
        io::write_file_atomic(config.output_dir / "sensitivity_series.csv", series);
        io::write_file_atomic(config.output_dir / "sensitivity_summary.csv", summary);
        out << summary;
        return int{kSuccess};
    });
}

inline int cmd_segment(const CliConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto params = algorithm_config(config);
        const auto algorithms = resolve_algorithms(config.algorithms, {Algorithm::Vmkm});
        if (algorithms.size() != 1) {
            throw Error(ErrorKind::InvalidParameter, "segment runs exactly one algorithm");
        }
        const Dataset ds = io::read_pgm(config.inputs.front());
        const auto centers = init_centers_random(ds, config.k.value_or(5), config.seed);
        const RunReport report = run_algorithm(algorithms.front(), ds, centers, params);

        const auto labels = label_map_of(report, ds);
        const auto image = io::format_segmented_pgm(labels, report.final_state.centroids);
        const auto labels_text = io::format_labels_csv(labels);
        const auto report_text = io::format_report_json(report);
        io::write_file_atomic(config.output_dir / "segmented.pgm", image);
        io::write_file_atomic(config.output_dir / "labels.csv", labels_text);
        io::write_file_atomic(config.output_dir / "report.json", report_text);
        out << "algorithm=" << report.algorithm << " k=" << report.final_state.k
            << " mse=" << io::format_real(report.mse)
            << " termination_reason=" << to_string(report.termination_reason) << "\n";
        return int{kSuccess};
    });
}

inline int run_command(const CliConfig& config, std::ostream& out, std::ostream& err) {
    switch (config.command) {
        case Command::Cluster: return cmd_cluster(config, out, err);
        case Command::Compare: return cmd_compare(config, out, err);
        case Command::Sensitivity: return cmd_sensitivity(config, out, err);
        case Command::Segment: return cmd_segment(config, out, err);
    }
    return kInternal;
}

}  // namespace vmkm::cli

#endif  // VMKM_CLI_HPP
