#ifndef VMKM_MKM_HPP
#define VMKM_MKM_HPP

#include <cstddef>
#include <limits>
#include <vector>

#include "cluster_state.hpp"
#include "dataset.hpp"
#include "engine.hpp"
#include "kmeans.hpp"
#include "params.hpp"
#include "report.hpp"

namespace vmkm {

/// Members of the highest-fitness cluster lying strictly on the lowest-fitness
/// cluster's side of the hyperplane through the high cluster's centroid
/// (perpendicular to the line joining both centroids). The member closest to
/// the centroid is never selected.
inline std::vector<std::size_t> mkm_transfer_candidates(const Dataset& ds, const ClusterState& state,
                                                        std::size_t largest, std::size_t smallest) {
    std::vector<std::size_t> out;
    if (largest == smallest) {
        return out;
    }
    const Point axis = state.centroids[smallest] - state.centroids[largest];
    std::size_t keeper = std::numeric_limits<std::size_t>::max();
    double closest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < state.assignments.size(); ++i) {
        if (state.assignments[i] != largest) {
            continue;
        }
        const double dev = euclidean_sq(ds.element(i), state.centroids[largest]);
        if (dev < closest) {
            closest = dev;
            keeper = i;
        }
        if ((ds.element(i) - state.centroids[largest]).dot(axis) > 0.0) {
            out.push_back(i);
        }
    }
    std::erase(out, keeper);
    return out;
}

/**
 * @brief Classical moving k-means.
 *
 * Same alpha schedule and termination rules as VMKM, with Euclidean
 * assignment and the hyperplane transfer from the highest- to the
 * lowest-fitness cluster.
 */
inline RunReport run_mkm(const Dataset& ds, const std::vector<Point>& initial_centers, const BaselineParams& params) {
    params.validate();
    VmkmParams loop;
    loop.k = initial_centers.size();
    loop.alpha0 = params.alpha0;
    loop.max_main_iterations = params.max_iterations;
    loop.seed = params.seed;
    return detail::run_moving_loop(
        ds, initial_centers, loop, "mkm",
        [&](ClusterState state) {
            state.assignments = assign_euclidean(ds, state.centroids);
            refresh_statistics(ds, state, loop.covariance_epsilon);
            return state;
        },
        [&](ClusterState& current, double) {
            const std::size_t largest = largest_cluster(current);
            const std::size_t smallest = smallest_cluster(current);
            const auto moving = mkm_transfer_candidates(ds, current, largest, smallest);
            for (std::size_t i : moving) {
                current.assignments[i] = smallest;
            }
            return moving.size();
        });
}

}  // namespace vmkm

#endif  // VMKM_MKM_HPP
