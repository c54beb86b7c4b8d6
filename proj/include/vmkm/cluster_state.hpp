#ifndef VMKM_CLUSTER_STATE_HPP
#define VMKM_CLUSTER_STATE_HPP

#include <cstddef>
#include <limits>
#include <vector>

#include "dataset.hpp"
#include "distances.hpp"
#include "error.hpp"

namespace vmkm {

/**
 * @brief Hard partition of a dataset into k clusters with cached per-cluster statistics.
 *
 * Before the first assignment pass `assignments` is empty; afterwards it holds
 * one cluster index per element. `fitness[j]` is the sum of squared Euclidean
 * deviations of cluster j's members from `centroids[j]`, `variances[j]` is that
 * sum divided by `counts[j]` (0 for empty clusters) and `covariances[j]` is the
 * regularized member covariance.
 */
struct ClusterState {
    std::size_t k = 0;
    std::vector<Point> centroids;
    std::vector<std::size_t> assignments;
    std::vector<std::size_t> counts;
    std::vector<double> fitness;
    std::vector<double> variances;
    std::vector<RegularizedCovariance> covariances;

    bool is_assigned() const { return !assignments.empty(); }

    /// Members of every cluster, in ascending element order.
    std::vector<std::vector<std::size_t>> members() const {
        std::vector<std::vector<std::size_t>> out(k);
        for (std::size_t i = 0; i < assignments.size(); ++i) {
            out[assignments[i]].push_back(i);
        }
        return out;
    }

    std::size_t empty_clusters() const {
        std::size_t empty = 0;
        for (std::size_t c : counts) {
            empty += (c == 0);
        }
        return empty;
    }

    bool operator==(const ClusterState&) const = default;
};

/// Unassigned state seeded with the given centroids and identity covariances.
inline ClusterState make_initial_state(const Dataset& ds, const std::vector<Point>& centers) {
    ClusterState state;
    state.k = centers.size();
    state.centroids = centers;
    state.counts.assign(state.k, 0);
    state.fitness.assign(state.k, 0.0);
    state.variances.assign(state.k, 0.0);
    state.covariances.assign(state.k, RegularizedCovariance::identity(ds.dim()));
    return state;
}

/// Recomputes counts, fitness, variances and covariances from the dataset,
/// the assignments and the current centroids. Centroids are left untouched.
inline void refresh_statistics(const Dataset& ds, ClusterState& state, double covariance_epsilon) {
    state.counts.assign(state.k, 0);
    state.fitness.assign(state.k, 0.0);
    state.variances.assign(state.k, 0.0);
    const auto groups = state.members();
    state.covariances.clear();
    state.covariances.reserve(state.k);
    for (std::size_t j = 0; j < state.k; ++j) {
        state.counts[j] = groups[j].size();
        double sum = 0.0;
        for (std::size_t i : groups[j]) {
            sum += euclidean_sq(ds.element(i), state.centroids[j]);
        }
        state.fitness[j] = sum;
        state.variances[j] = groups[j].empty() ? 0.0 : sum / static_cast<double>(groups[j].size());
        state.covariances.push_back(estimate_cluster_covariance(ds, groups[j], covariance_epsilon));
    }
}

/// Index of the minimum-fitness cluster. Among equal fitness the cluster with
/// fewer members wins, then the lower index; empty clusters are therefore
/// always preferred.
inline std::size_t smallest_cluster(const ClusterState& state) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < state.k; ++j) {
        if (state.fitness[j] < state.fitness[best] ||
            (state.fitness[j] == state.fitness[best] && state.counts[j] < state.counts[best])) {
            best = j;
        }
    }
    return best;
}

/// Index of the maximum-fitness cluster, lowest index on ties.
inline std::size_t largest_cluster(const ClusterState& state) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < state.k; ++j) {
        if (state.fitness[j] > state.fitness[best]) {
            best = j;
        }
    }
    return best;
}

}  // namespace vmkm

#endif  // VMKM_CLUSTER_STATE_HPP
