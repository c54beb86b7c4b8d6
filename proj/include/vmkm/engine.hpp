#ifndef VMKM_ENGINE_HPP
#define VMKM_ENGINE_HPP

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "cluster_state.hpp"
#include "dataset.hpp"
#include "distances.hpp"
#include "error.hpp"
#include "init.hpp"
#include "metrics.hpp"
#include "params.hpp"
#include "report.hpp"

/**
 * @file engine.hpp
 *
 * @brief Variance based moving k-means.
 *
 * Elements are assigned to the cluster with the smallest squared Mahalanobis
 * distance under that cluster's own covariance. A nested loop then moves
 * poorly correlated elements out of the highest-fitness cluster and into the
 * lowest-fitness cluster until min fitness > alpha_a * max fitness; the main
 * loop repeats assignment and the nested loop until
 * min fitness > alpha_b * max fitness, the iteration cap is hit, or transfers
 * stall.
 */

namespace vmkm {

enum class TransferRule {
    /// Element left the highest-fitness cluster: deviation >= 2 * cluster variance.
    FromLargest,
    /// Element joined the lowest-fitness cluster from its neighbour: deviation >= neighbour variance.
    ToSmallest,
};

struct TransferDecision {
    std::size_t element_id = 0;
    std::size_t from_cluster = 0;
    std::size_t to_cluster = 0;
    /// Squared Euclidean deviation of the element from its source centroid.
    double sigma_v = 0.0;
    /// Variance of the source cluster.
    double sigma_c = 0.0;
    TransferRule rule = TransferRule::FromLargest;
};

struct TransferResult {
    ClusterState state;
    std::vector<TransferDecision> decisions;
};

/// Moves every cluster's centroid to the mean of its members; empty clusters
/// keep their previous centroid. Statistics are refreshed.
inline ClusterState update_centroids(const Dataset& ds, ClusterState state, double covariance_epsilon) {
    const auto d = static_cast<Eigen::Index>(ds.dim());
    std::vector<Point> sums(state.k, Point::Zero(d));
    std::vector<std::size_t> counts(state.k, 0);
    for (std::size_t i = 0; i < state.assignments.size(); ++i) {
        sums[state.assignments[i]] += ds.element(i);
        ++counts[state.assignments[i]];
    }
    for (std::size_t j = 0; j < state.k; ++j) {
        if (counts[j] > 0) {
            state.centroids[j] = sums[j] / static_cast<double>(counts[j]);
        }
    }
    refresh_statistics(ds, state, covariance_epsilon);
    return state;
}

/// Index of the cluster minimising the squared Mahalanobis distance to element i,
/// skipping `excluded`; lowest index wins ties.
inline std::size_t nearest_by_mahalanobis(const Dataset& ds, const ClusterState& state, std::size_t i,
                                          std::size_t excluded = std::numeric_limits<std::size_t>::max()) {
    std::size_t best = excluded == 0 ? 1 : 0;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < state.k; ++j) {
        if (j == excluded) {
            continue;
        }
        const double distance = mahalanobis_sq(ds.element(i), state.centroids[j], state.covariances[j]);
        if (distance < best_distance) {
            best_distance = distance;
            best = j;
        }
    }
    return best;
}

/// Assigns every element to its minimum-Mahalanobis cluster using the state's
/// current centroids and covariances, then refreshes statistics.
inline ClusterState assign_all(const Dataset& ds, ClusterState state, double covariance_epsilon) {
    state.assignments.resize(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        state.assignments[i] = nearest_by_mahalanobis(ds, state, i);
    }
    refresh_statistics(ds, state, covariance_epsilon);
    return state;
}

namespace detail {

struct Deviation {
    std::size_t element = 0;
    double value = 0.0;
};

// Squared deviations of a cluster's members, plus the member closest to the
// centroid, which is never transferred.
inline std::vector<Deviation> member_deviations(const Dataset& ds, const ClusterState& state, std::size_t j,
                                                std::size_t& keeper) {
    std::vector<Deviation> out;
    keeper = std::numeric_limits<std::size_t>::max();
    double closest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < state.assignments.size(); ++i) {
        if (state.assignments[i] != j) {
            continue;
        }
        const double dev = euclidean_sq(ds.element(i), state.centroids[j]);
        out.push_back({i, dev});
        if (dev < closest) {
            closest = dev;
            keeper = i;
        }
    }
    return out;
}

}  // namespace detail

/**
 * @brief Sheds the poorly correlated members of the highest-fitness cluster.
 *
 * Every member whose squared deviation reaches twice the cluster variance moves
 * to the other cluster nearest to it by Mahalanobis distance. The member closest
 * to the centroid always stays.
 */
inline TransferResult transfer_from_largest(const Dataset& ds, ClusterState state, double covariance_epsilon) {
    TransferResult result;
    if (state.k < 2) {
        result.state = std::move(state);
        return result;
    }
    const std::size_t largest = largest_cluster(state);
    const double sigma_c = state.variances[largest];
    if (sigma_c > 0.0) {
        std::size_t keeper = 0;
        for (const auto& [element, dev] : detail::member_deviations(ds, state, largest, keeper)) {
            if (element != keeper && dev >= 2.0 * sigma_c) {
                const std::size_t to = nearest_by_mahalanobis(ds, state, element, largest);
                result.decisions.push_back({element, largest, to, dev, sigma_c, TransferRule::FromLargest});
            }
        }
    }
    for (const auto& decision : result.decisions) {
        state.assignments[decision.element_id] = decision.to_cluster;
    }
    result.state = result.decisions.empty() ? std::move(state) : update_centroids(ds, std::move(state), covariance_epsilon);
    return result;
}

/// Neighbour of cluster `target`: the cluster with the nearest centroid among
/// those with positive variance (the only ones able to donate). Returns k when
/// no cluster qualifies.
inline std::size_t neighbour_cluster(const ClusterState& state, std::size_t target) {
    std::size_t best = state.k;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < state.k; ++j) {
        if (j == target || !(state.variances[j] > 0.0)) {
            continue;
        }
        const double distance = euclidean_sq(state.centroids[j], state.centroids[target]);
        if (distance < best_distance) {
            best_distance = distance;
            best = j;
        }
    }
    return best;
}

/**
 * @brief Feeds the lowest-fitness cluster from its neighbour.
 *
 * Every member of the neighbour whose squared deviation reaches the
 * neighbour's variance moves into the lowest-fitness cluster; the neighbour's
 * member closest to its centroid always stays.
 */
inline TransferResult transfer_to_smallest(const Dataset& ds, ClusterState state, double covariance_epsilon) {
    TransferResult result;
    if (state.k < 2) {
        result.state = std::move(state);
        return result;
    }
    const std::size_t smallest = smallest_cluster(state);
    const std::size_t neighbour = neighbour_cluster(state, smallest);
    if (neighbour < state.k) {
        const double sigma_c = state.variances[neighbour];
        std::size_t keeper = 0;
        for (const auto& [element, dev] : detail::member_deviations(ds, state, neighbour, keeper)) {
            if (element != keeper && dev >= sigma_c) {
                result.decisions.push_back({element, neighbour, smallest, dev, sigma_c, TransferRule::ToSmallest});
            }
        }
    }
    for (const auto& decision : result.decisions) {
        state.assignments[decision.element_id] = decision.to_cluster;
    }
    result.state = result.decisions.empty() ? std::move(state) : update_centroids(ds, std::move(state), covariance_epsilon);
    return result;
}

/// min fitness > alpha * max fitness
inline bool fitness_balanced(const ClusterState& state, double alpha) {
    return state.fitness[smallest_cluster(state)] > alpha * state.fitness[largest_cluster(state)];
}

struct NestedResult {
    ClusterState state;
    AlphaState alphas;
    std::size_t iterations = 0;
    std::size_t transfers = 0;
};

namespace detail {

template <typename TransferPass>
NestedResult nested_loop_with(const Dataset& ds, ClusterState state, AlphaState alphas, const VmkmParams& params,
                              TransferPass&& pass) {
    NestedResult out;
    while (out.iterations < params.max_nested_iterations && !fitness_balanced(state, alphas.alpha_a)) {
        out.transfers += pass(state, alphas.alpha_a);
        state = update_centroids(ds, std::move(state), params.covariance_epsilon);
        alphas = update_alpha_a(alphas, state.k);
        ++out.iterations;
    }
    out.state = std::move(state);
    out.alphas = alphas;
    return out;
}

}  // namespace detail

/**
 * @brief One nested-loop transfer pass.
 *
 * Sheds violators from the highest-fitness cluster; if the fitness balance
 * min f > alpha_a * max f still fails afterwards, feeds the lowest-fitness
 * cluster from its neighbour. Returns the number of elements moved.
 */
inline std::size_t vmkm_transfer_pass(const Dataset& ds, ClusterState& state, double alpha_a,
                                      double covariance_epsilon) {
    auto shed = transfer_from_largest(ds, std::move(state), covariance_epsilon);
    state = std::move(shed.state);
    std::size_t moved = shed.decisions.size();
    if (!fitness_balanced(state, alpha_a)) {
        auto fed = transfer_to_smallest(ds, std::move(state), covariance_epsilon);
        state = std::move(fed.state);
        moved += fed.decisions.size();
    }
    return moved;
}

/**
 * @brief Transfers elements until min fitness > alpha_a * max fitness.
 *
 * Each unsuccessful check runs one transfer pass, recomputes centroids and
 * shrinks alpha_a by a factor (1 - 1/k). Bounded by `max_nested_iterations`.
 */
inline NestedResult nested_loop(const Dataset& ds, ClusterState state, AlphaState alphas, const VmkmParams& params) {
    return detail::nested_loop_with(ds, std::move(state), alphas, params, [&](ClusterState& current, double alpha_a) {
        return vmkm_transfer_pass(ds, current, alpha_a, params.covariance_epsilon);
    });
}

/// Threshold update applied after a main iteration fails the alpha_b balance test.
inline AlphaState advance_main_alphas(AlphaState alphas, const VmkmParams& params, std::size_t k) {
    alphas.alpha_a = params.alpha0;
    if (params.strict_eq10) {
        return update_alpha_a(alphas, k);
    }
    return update_alpha_b(alphas, k);
}

/// True when each of the last `consecutive` iterations moved fewer than
/// `fraction * n` elements.
inline bool transfers_stalled(const std::vector<std::size_t>& transfers, std::size_t n, double fraction,
                              std::size_t consecutive) {
    if (transfers.size() < consecutive) {
        return false;
    }
    const double limit = fraction * static_cast<double>(n);
    for (std::size_t t = transfers.size() - consecutive; t < transfers.size(); ++t) {
        if (!(static_cast<double>(transfers[t]) < limit)) {
            return false;
        }
    }
    return true;
}

namespace detail {

/// Main loop shared by VMKM and classical moving k-means. `assign` performs a
/// full reassignment of the state; `pass` runs one nested transfer pass and
/// returns the number of elements moved.
template <typename AssignFn, typename TransferPass>
RunReport run_moving_loop(const Dataset& ds, const std::vector<Point>& initial_centers, const VmkmParams& params,
                          std::string algorithm, AssignFn&& assign, TransferPass&& pass) {
    params.validate();
    const auto centers = init_centers_explicit(ds, initial_centers);
    if (centers.size() != params.k) {
        throw Error(ErrorKind::InvalidParameter, "expected " + std::to_string(params.k) + " initial centers, got " +
                                                     std::to_string(centers.size()));
    }
    const std::size_t k = centers.size();

    RunReport report;
    report.algorithm = std::move(algorithm);
    report.seed_used = params.seed;

    ClusterState state = make_initial_state(ds, centers);
    AlphaState alphas = AlphaState::initial(params.alpha0);
    for (std::size_t iteration = 1;; ++iteration) {
        const auto previous = state.assignments;
        state = assign(std::move(state));
        std::size_t moved = 0;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            moved += previous.empty() || previous[i] != state.assignments[i];
        }
        state = update_centroids(ds, std::move(state), params.covariance_epsilon);

        auto nested = nested_loop_with(ds, std::move(state), alphas, params, pass);
        state = std::move(nested.state);
        alphas = nested.alphas;
        report.main_iterations = iteration;
        report.nested_iterations_total += nested.iterations;
        report.nested_iterations_per_main.push_back(nested.iterations);
        report.transfers_per_iteration.push_back(moved + nested.transfers);

        if (fitness_balanced(state, alphas.alpha_b)) {
            report.termination_reason = TerminationReason::ConditionMet;
            break;
        }
        alphas = advance_main_alphas(alphas, params, k);
        if (transfers_stalled(report.transfers_per_iteration, ds.size(), params.stall_fraction,
                              params.stall_consecutive)) {
            report.termination_reason = TerminationReason::Stalled;
            break;
        }
        if (iteration >= params.max_main_iterations) {
            report.termination_reason = TerminationReason::MaxIterations;
            break;
        }
    }

    report.final_alphas = alphas;
    report.fitness_per_cluster = state.fitness;
    report.mse = mse(ds, state);
    report.final_state = std::move(state);
    return report;
}

}  // namespace detail

/**
 * @brief Runs VMKM from explicit initial centers.
 *
 * Termination: `ConditionMet` once min fitness > alpha_b * max fitness after a
 * nested loop, `Stalled` when `stall_consecutive` consecutive main iterations
 * each moved fewer than `stall_fraction * n` elements, `MaxIterations` at the
 * main-loop cap. A main iteration's transfer count is its reassignments plus
 * every nested transfer.
 */
inline RunReport run_vmkm(const Dataset& ds, const std::vector<Point>& initial_centers, const VmkmParams& params) {
    return detail::run_moving_loop(
        ds, initial_centers, params, "vmkm",
        [&](ClusterState state) { return assign_all(ds, std::move(state), params.covariance_epsilon); },
        [&](ClusterState& current, double alpha_a) {
            return vmkm_transfer_pass(ds, current, alpha_a, params.covariance_epsilon);
        });
}

/// Convenience overload drawing Forgy centers from `params.seed`.
inline RunReport run_vmkm(const Dataset& ds, const VmkmParams& params) {
    params.validate();
    return run_vmkm(ds, init_centers_random(ds, params.k, params.seed), params);
}

}  // namespace vmkm

#endif  // VMKM_ENGINE_HPP
