#ifndef VMKM_KERNEL_KMEANS_HPP
#define VMKM_KERNEL_KMEANS_HPP

#include <algorithm>
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

/// gamma = 1 / (2 * median pairwise squared distance) over at most 1000
/// elements drawn with `seed`. Falls back to 1 when the median is zero.
inline double auto_rbf_gamma(const Dataset& ds, std::uint64_t seed) {
    const std::size_t sample = std::min<std::size_t>(ds.size(), 1000);
    const auto picks = sample_indices(ds.size(), sample, seed);
    std::vector<double> distances;
    distances.reserve(sample * (sample - 1) / 2);
    for (std::size_t a = 0; a < picks.size(); ++a) {
        for (std::size_t b = a + 1; b < picks.size(); ++b) {
            distances.push_back(euclidean_sq(ds.element(picks[a]), ds.element(picks[b])));
        }
    }
    if (distances.empty()) {
        return 1.0;
    }
    std::sort(distances.begin(), distances.end());
    const double median = quantile_sorted(distances, 0.5);
    return median > 0.0 ? 1.0 / (2.0 * median) : 1.0;
}

inline Eigen::MatrixXd rbf_gram_matrix(const Dataset& ds, double gamma) {
    const auto n = static_cast<Eigen::Index>(ds.size());
    Eigen::MatrixXd gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        gram(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double value = rbf_kernel(ds.element(static_cast<std::size_t>(i)),
                                            ds.element(static_cast<std::size_t>(j)), gamma);
            gram(i, j) = value;
            gram(j, i) = value;
        }
    }
    return gram;
}

/**
 * @brief One kernel k-means reassignment.
 *
 * The feature-space squared distance of element i to cluster C is
 * K_ii - 2/|C| sum_{j in C} K_ij + 1/|C|^2 sum_{j,l in C} K_jl. Empty clusters
 * are never chosen.
 */
inline std::vector<std::size_t> kernel_reassign(const Eigen::MatrixXd& gram, const std::vector<std::size_t>& labels,
                                                std::size_t k) {
    const auto n = static_cast<std::size_t>(gram.rows());
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < n; ++i) {
        members[labels[i]].push_back(i);
    }
    std::vector<double> compactness(k, 0.0);
    // affinity(i, j) = sum over members of j of K(i, member)
    Eigen::MatrixXd affinity = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t member : members[j]) {
            affinity.col(static_cast<Eigen::Index>(j)) += gram.col(static_cast<Eigen::Index>(member));
        }
        double total = 0.0;
        for (std::size_t member : members[j]) {
            total += affinity(static_cast<Eigen::Index>(member), static_cast<Eigen::Index>(j));
        }
        if (!members[j].empty()) {
            const double size = static_cast<double>(members[j].size());
            compactness[j] = total / (size * size);
        }
    }
    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_cluster = labels[i];
        for (std::size_t j = 0; j < k; ++j) {
            if (members[j].empty()) {
                continue;
            }
            const double size = static_cast<double>(members[j].size());
            const double distance =
                gram(row, row) - 2.0 * affinity(row, static_cast<Eigen::Index>(j)) / size + compactness[j];
            if (distance < best) {
                best = distance;
                best_cluster = j;
            }
        }
        out[i] = best_cluster;
    }
    return out;
}

/**
 * @brief RBF kernel k-means from an initial partition.
 *
 * Iterates kernel reassignments until no element moves. The report's
 * centroids are input-space member means (empty clusters take the matching
 * entry of `fallback_centroids`, else the dataset mean), so its MSE is measured
 * on the same scale as the other algorithms.
 */
inline RunReport run_kernel_kmeans(const Dataset& ds, const std::vector<std::size_t>& initial_assignments,
                                   const BaselineParams& params, const std::vector<Point>& fallback_centroids = {}) {
    params.validate();
    if (ds.size() > params.gram_cap) {
        throw Error(ErrorKind::GramTooLarge, std::to_string(ds.size()) + " elements exceed the Gram matrix cap of " +
                                                 std::to_string(params.gram_cap));
    }
    if (initial_assignments.size() != ds.size()) {
        throw Error(ErrorKind::DimensionMismatch, "initial assignment length differs from element count");
    }
    std::size_t k = params.k;
    for (std::size_t label : initial_assignments) {
        k = std::max(k, label + 1);
    }
    const double gamma = params.rbf_gamma ? *params.rbf_gamma : auto_rbf_gamma(ds, params.seed);
    const Eigen::MatrixXd gram = rbf_gram_matrix(ds, gamma);

    RunReport report;
    report.algorithm = "kernel";
    report.seed_used = params.seed;
    report.termination_reason = TerminationReason::MaxIterations;

    std::vector<std::size_t> labels = initial_assignments;
    for (std::size_t iteration = 1; iteration <= params.max_iterations; ++iteration) {
        auto next = kernel_reassign(gram, labels, k);
        std::size_t moved = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            moved += next[i] != labels[i];
        }
        labels = std::move(next);
        report.main_iterations = iteration;
        report.transfers_per_iteration.push_back(moved);
        if (moved == 0) {
            report.termination_reason = TerminationReason::ConditionMet;
            break;
        }
    }

    const Point mean = ds.elements().colwise().mean().transpose();
    std::vector<Point> centroids(k, mean);
    for (std::size_t j = 0; j < std::min(k, fallback_centroids.size()); ++j) {
        centroids[j] = fallback_centroids[j];
    }
    ClusterState state = make_initial_state(ds, centroids);
    state.assignments = std::move(labels);
    state = update_centroids(ds, std::move(state), 1e-6);
    report.fitness_per_cluster = state.fitness;
    report.mse = mse(ds, state);
    report.final_state = std::move(state);
    return report;
}

/// Kernel k-means seeded with the nearest-center partition of `initial_centers`.
inline RunReport run_kernel_kmeans(const Dataset& ds, const std::vector<Point>& initial_centers,
                                   const BaselineParams& params) {
    const auto centers = init_centers_explicit(ds, initial_centers);
    std::vector<std::size_t> labels(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < centers.size(); ++j) {
            if (euclidean_sq(ds.element(i), centers[j]) < euclidean_sq(ds.element(i), centers[best])) {
                best = j;
            }
        }
        labels[i] = best;
    }
    BaselineParams adjusted = params;
    adjusted.k = centers.size();
    return run_kernel_kmeans(ds, labels, adjusted, centers);
}

}  // namespace vmkm

#endif  // VMKM_KERNEL_KMEANS_HPP
