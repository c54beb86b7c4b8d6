#ifndef VMKM_FCM_HPP
#define VMKM_FCM_HPP

#include <cmath>
#include <cstddef>
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

/// Row-major n x k membership matrix.
using MembershipMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/**
 * @brief Fuzzy c-means membership of every element given the centroids.
 *
 * u_ij = 1 / sum_l (d_ij^2 / d_il^2)^(1/(m-1)). An element sitting exactly on
 * one or more centroids splits its membership equally among those centroids.
 */
inline MembershipMatrix fcm_memberships(const Dataset& ds, const std::vector<Point>& centroids, double fuzzifier) {
    const std::size_t k = centroids.size();
    const double exponent = 1.0 / (fuzzifier - 1.0);
    MembershipMatrix u(static_cast<Eigen::Index>(ds.size()), static_cast<Eigen::Index>(k));
    std::vector<double> d2(k);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        std::size_t zeros = 0;
        for (std::size_t j = 0; j < k; ++j) {
            d2[j] = euclidean_sq(ds.element(i), centroids[j]);
            zeros += (d2[j] == 0.0);
        }
        if (zeros > 0) {
            for (std::size_t j = 0; j < k; ++j) {
                u(row, static_cast<Eigen::Index>(j)) = d2[j] == 0.0 ? 1.0 / static_cast<double>(zeros) : 0.0;
            }
            continue;
        }
        for (std::size_t j = 0; j < k; ++j) {
            double denom = 0.0;
            for (std::size_t l = 0; l < k; ++l) {
                denom += std::pow(d2[j] / d2[l], exponent);
            }
            u(row, static_cast<Eigen::Index>(j)) = 1.0 / denom;
        }
    }
    return u;
}

/// Membership-weighted centroids sum_i u_ij^m x_i / sum_i u_ij^m. A cluster with
/// zero total weight keeps its previous centroid.
inline std::vector<Point> fcm_centroids(const Dataset& ds, const MembershipMatrix& u, double fuzzifier,
                                        std::vector<Point> previous) {
    for (std::size_t j = 0; j < previous.size(); ++j) {
        Point sum = Point::Zero(static_cast<Eigen::Index>(ds.dim()));
        double weight = 0.0;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            const double w = std::pow(u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), fuzzifier);
            sum += w * ds.element(i);
            weight += w;
        }
        if (weight > 0.0) {
            previous[j] = sum / weight;
        }
    }
    return previous;
}

/// Hard labels by maximal membership, lowest index on ties.
inline std::vector<std::size_t> harden(const MembershipMatrix& u) {
    std::vector<std::size_t> labels(static_cast<std::size_t>(u.rows()));
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        Eigen::Index best = 0;
        for (Eigen::Index j = 1; j < u.cols(); ++j) {
            if (u(i, j) > u(i, best)) {
                best = j;
            }
        }
        labels[static_cast<std::size_t>(i)] = static_cast<std::size_t>(best);
    }
    return labels;
}

/**
 * @brief Fuzzy c-means, reported as a hard partition.
 *
 * Alternates membership and centroid updates until the largest membership
 * change drops below `tolerance`. The report carries the maximal-membership
 * partition with centroids recomputed as plain member means, so its MSE is
 * comparable with the hard algorithms.
 */
inline RunReport run_fcm(const Dataset& ds, const std::vector<Point>& initial_centers, const BaselineParams& params) {
    params.validate();
    auto centroids = init_centers_explicit(ds, initial_centers);
    const double m = params.fcm_fuzzifier;

    RunReport report;
    report.algorithm = "fcm";
    report.seed_used = params.seed;
    report.termination_reason = TerminationReason::MaxIterations;

    MembershipMatrix u = fcm_memberships(ds, centroids, m);
    auto labels = harden(u);
    for (std::size_t iteration = 1; iteration <= params.max_iterations; ++iteration) {
        centroids = fcm_centroids(ds, u, m, std::move(centroids));
        MembershipMatrix next = fcm_memberships(ds, centroids, m);
        const double change = (next - u).cwiseAbs().maxCoeff();
        u = std::move(next);
        auto next_labels = harden(u);
        std::size_t moved = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            moved += next_labels[i] != labels[i];
        }
        labels = std::move(next_labels);
        report.main_iterations = iteration;
        report.transfers_per_iteration.push_back(moved);
        if (change < params.tolerance) {
            report.termination_reason = TerminationReason::ConditionMet;
            break;
        }
    }

    ClusterState state = make_initial_state(ds, centroids);
    state.assignments = std::move(labels);
    state = update_centroids(ds, std::move(state), 1e-6);
    report.fitness_per_cluster = state.fitness;
    report.mse = mse(ds, state);
    report.final_state = std::move(state);
    return report;
}

}  // namespace vmkm

#endif  // VMKM_FCM_HPP
