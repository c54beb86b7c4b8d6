#ifndef VMKM_KMEANS_HPP
#define VMKM_KMEANS_HPP

#include <cstddef>
#include <limits>
#include <vector>

#include "cluster_state.hpp"
#include "dataset.hpp"
#include "distances.hpp"
#include "engine.hpp"
#include "init.hpp"
#include "metrics.hpp"
#include "params.hpp"
#include "report.hpp"

namespace vmkm {

/// Nearest centroid by squared Euclidean distance, lowest index on ties.
template <typename Vec>
std::size_t nearest_centroid(const Eigen::MatrixBase<Vec>& v, const std::vector<Point>& centroids) {
    std::size_t best = 0;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < centroids.size(); ++j) {
        const double distance = euclidean_sq(v, centroids[j]);
        if (distance < best_distance) {
            best_distance = distance;
            best = j;
        }
    }
    return best;
}

inline std::vector<std::size_t> assign_euclidean(const Dataset& ds, const std::vector<Point>& centroids) {
    std::vector<std::size_t> out(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        out[i] = nearest_centroid(ds.element(i), centroids);
    }
    return out;
}

/**
 * @brief Lloyd's k-means.
 *
 * Elements are first assigned to the nearest initial center; each iteration
 * then recomputes centroids and reassigns until no element moves. Empty
 * clusters are not repaired and keep their stale centroid.
 */
inline RunReport run_kmeans(const Dataset& ds, const std::vector<Point>& initial_centers,
                            const BaselineParams& params) {
    params.validate();
    const auto centers = init_centers_explicit(ds, initial_centers);

    RunReport report;
    report.algorithm = "km";
    report.seed_used = params.seed;

    // Statistics are only needed for the final report, not per iteration.
    constexpr double kEpsilon = 1e-6;
    ClusterState state = make_initial_state(ds, centers);
    state.assignments = assign_euclidean(ds, state.centroids);
    report.termination_reason = TerminationReason::MaxIterations;
    for (std::size_t iteration = 1; iteration <= params.max_iterations; ++iteration) {
        std::vector<Point> sums(state.k, Point::Zero(static_cast<Eigen::Index>(ds.dim())));
        std::vector<std::size_t> counts(state.k, 0);
        for (std::size_t i = 0; i < ds.size(); ++i) {
            sums[state.assignments[i]] += ds.element(i);
            ++counts[state.assignments[i]];
        }
        for (std::size_t j = 0; j < state.k; ++j) {
            if (counts[j] > 0) {
                state.centroids[j] = sums[j] / static_cast<double>(counts[j]);
            }
        }
        auto next = assign_euclidean(ds, state.centroids);
        std::size_t moved = 0;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            moved += next[i] != state.assignments[i];
        }
        state.assignments = std::move(next);
        report.main_iterations = iteration;
        report.transfers_per_iteration.push_back(moved);
        if (moved == 0) {
            report.termination_reason = TerminationReason::ConditionMet;
            break;
        }
    }
    refresh_statistics(ds, state, kEpsilon);
    report.fitness_per_cluster = state.fitness;
    report.mse = mse(ds, state);
    report.final_state = std::move(state);
    return report;
}

}  // namespace vmkm

#endif  // VMKM_KMEANS_HPP
