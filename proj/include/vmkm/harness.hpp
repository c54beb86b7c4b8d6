#ifndef VMKM_HARNESS_HPP
#define VMKM_HARNESS_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "dataset.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "fcm.hpp"
#include "init.hpp"
#include "kernel_kmeans.hpp"
#include "kmeans.hpp"
#include "metrics.hpp"
#include "mkm.hpp"
#include "params.hpp"
#include "report.hpp"

namespace vmkm {

enum class Algorithm { Vmkm, KMeans, Mkm, Fcm, KernelKMeans };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::Vmkm, Algorithm::KMeans, Algorithm::Mkm, Algorithm::Fcm,
                                               Algorithm::KernelKMeans};

inline std::string_view algorithm_name(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::Vmkm: return "vmkm";
        case Algorithm::KMeans: return "km";
        case Algorithm::Mkm: return "mkm";
        case Algorithm::Fcm: return "fcm";
        case Algorithm::KernelKMeans: return "kernel";
    }
    return "vmkm";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view name) {
    for (Algorithm a : kAllAlgorithms) {
        if (algorithm_name(a) == name) {
            return a;
        }
    }
    return std::nullopt;
}

inline std::string supported_algorithms() {
    std::string out;
    for (Algorithm a : kAllAlgorithms) {
        if (!out.empty()) {
            out += ", ";
        }
        out += algorithm_name(a);
    }
    return out;
}

struct AlgorithmConfig {
    VmkmParams vmkm;
    BaselineParams baseline;
};

/// Runs one algorithm from the given centers; k is taken from the centers.
inline RunReport run_algorithm(Algorithm algorithm, const Dataset& ds, const std::vector<Point>& centers,
                               AlgorithmConfig config) {
    config.vmkm.k = centers.size();
    config.baseline.k = centers.size();
    switch (algorithm) {
        case Algorithm::Vmkm: return run_vmkm(ds, centers, config.vmkm);
        case Algorithm::KMeans: return run_kmeans(ds, centers, config.baseline);
        case Algorithm::Mkm: return run_mkm(ds, centers, config.baseline);
        case Algorithm::Fcm: return run_fcm(ds, centers, config.baseline);
        case Algorithm::KernelKMeans: return run_kernel_kmeans(ds, centers, config.baseline);
    }
    throw Error(ErrorKind::InvalidParameter, "unknown algorithm");
}

struct TrialRecord {
    std::size_t trial_index = 0;
    std::uint64_t seed = 0;
    std::vector<Point> initial_centers;
    /// Final MSE per algorithm, in the order of SensitivityResult::algorithms;
    /// nullopt when that run failed.
    std::vector<std::optional<double>> final_mse;
};

struct SensitivityResult {
    std::vector<Algorithm> algorithms;
    std::vector<TrialRecord> trials;
    /// Summary over the successful trials of each algorithm.
    std::vector<SummaryStats> per_algorithm_summary;
};

/**
 * @brief Initialization-sensitivity study with a paired design.
 *
 * Trial t draws element-sampled centers with seed `base_seed + t` and runs every
 * algorithm from that same center set. A failing run is recorded as absent
 * without aborting the others. Trials run on up to `workers` threads; results
 * are merged by trial index, so the output does not depend on scheduling.
 */
inline SensitivityResult run_sensitivity(const Dataset& ds, const std::vector<Algorithm>& algorithms, std::size_t k,
                                         std::size_t trials, std::uint64_t base_seed,
                                         const AlgorithmConfig& config = {}, unsigned workers = 0) {
    if (trials < 1) {
        throw Error(ErrorKind::InvalidParameter, "trials must be at least 1");
    }
    if (algorithms.empty()) {
        throw Error(ErrorKind::InvalidParameter, "at least one algorithm is required");
    }
    SensitivityResult result;
    result.algorithms = algorithms;
    result.trials.resize(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        result.trials[t].trial_index = t;
        result.trials[t].seed = base_seed + t;
        result.trials[t].initial_centers = init_centers_random(ds, k, base_seed + t);
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < trials; t = next++) {
            auto& trial = result.trials[t];
            trial.final_mse.resize(algorithms.size());
            AlgorithmConfig local = config;
            local.vmkm.seed = trial.seed;
            local.baseline.seed = trial.seed;
            for (std::size_t a = 0; a < algorithms.size(); ++a) {
                try {
                    trial.final_mse[a] = run_algorithm(algorithms[a], ds, trial.initial_centers, local).mse;
                } catch (const Error&) {
                    trial.final_mse[a] = std::nullopt;
                }
            }
        }
    };
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, trials));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        worker();
    }

    for (std::size_t a = 0; a < algorithms.size(); ++a) {
        std::vector<double> values;
        for (const auto& trial : result.trials) {
            if (trial.final_mse[a]) {
                values.push_back(*trial.final_mse[a]);
            }
        }
        result.per_algorithm_summary.push_back(summarize(std::move(values)));
    }
    return result;
}

/// Runs of one algorithm on one dataset; an empty list marks the cell absent.
struct CellResult {
    std::string dataset;
    std::string algorithm;
    std::vector<RunReport> reports;
};

/// Mean MSE per (dataset, algorithm) with the per-row minimum marked.
struct ComparisonTable {
    std::vector<std::string> datasets;
    std::vector<std::string> algorithms;
    std::vector<std::vector<std::optional<double>>> cells;
    /// Column of the smallest present cell in each row (first on ties).
    std::vector<std::optional<std::size_t>> row_minimum;
};

/// Index of the smallest present value, first on ties.
inline std::optional<std::size_t> row_minimum_of(const std::vector<std::optional<double>>& row) {
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < row.size(); ++c) {
        if (row[c] && (!best || *row[c] < *row[*best])) {
            best = c;
        }
    }
    return best;
}

/// Rows and columns follow first appearance in `results`.
inline ComparisonTable build_comparison_table(const std::vector<CellResult>& results) {
    if (results.empty()) {
        throw Error(ErrorKind::InvalidParameter, "comparison table needs at least one result");
    }
    ComparisonTable table;
    auto index_of = [](std::vector<std::string>& names, const std::string& name) {
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) {
            names.push_back(name);
            return names.size() - 1;
        }
        return static_cast<std::size_t>(it - names.begin());
    };
    for (const auto& cell : results) {
        index_of(table.datasets, cell.dataset);
        index_of(table.algorithms, cell.algorithm);
    }
    table.cells.assign(table.datasets.size(), std::vector<std::optional<double>>(table.algorithms.size()));
    std::vector<std::vector<std::size_t>> counts(table.datasets.size(), std::vector<std::size_t>(table.algorithms.size()));
    for (const auto& cell : results) {
        const std::size_t r = index_of(table.datasets, cell.dataset);
        const std::size_t c = index_of(table.algorithms, cell.algorithm);
        for (const auto& report : cell.reports) {
            table.cells[r][c] = table.cells[r][c].value_or(0.0) + report.mse;
            ++counts[r][c];
        }
    }
    for (std::size_t r = 0; r < table.datasets.size(); ++r) {
        for (std::size_t c = 0; c < table.algorithms.size(); ++c) {
            if (table.cells[r][c]) {
                *table.cells[r][c] /= static_cast<double>(counts[r][c]);
            }
        }
        table.row_minimum.push_back(row_minimum_of(table.cells[r]));
    }
    return table;
}

}  // namespace vmkm

#endif  // VMKM_HARNESS_HPP
