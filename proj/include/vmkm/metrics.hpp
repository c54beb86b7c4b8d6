#ifndef VMKM_METRICS_HPP
#define VMKM_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "cluster_state.hpp"
#include "dataset.hpp"
#include "distances.hpp"
#include "error.hpp"

namespace vmkm {

/// Sum of squared Euclidean deviations of cluster j's members from its centroid.
inline double fitness(const Dataset& ds, const ClusterState& state, std::size_t j) {
    if (j >= state.k) {
        throw Error(ErrorKind::BadClusterIndex, "cluster " + std::to_string(j) + " out of range");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < state.assignments.size(); ++i) {
        if (state.assignments[i] == j) {
            sum += euclidean_sq(ds.element(i), state.centroids[j]);
        }
    }
    return sum;
}

/// Mean squared deviation of cluster j's members (0 when empty).
inline double cluster_variance(const Dataset& ds, const ClusterState& state, std::size_t j) {
    if (j >= state.k) {
        throw Error(ErrorKind::BadClusterIndex, "cluster " + std::to_string(j) + " out of range");
    }
    std::size_t count = 0;
    for (std::size_t a : state.assignments) {
        count += (a == j);
    }
    return count == 0 ? 0.0 : fitness(ds, state, j) / static_cast<double>(count);
}

/// Mean squared distance of every element to its assigned centroid.
inline double mse(const Dataset& ds, const ClusterState& state) {
    double total = 0.0;
    for (std::size_t i = 0; i < state.assignments.size(); ++i) {
        total += euclidean_sq(ds.element(i), state.centroids[state.assignments[i]]);
    }
    return total / static_cast<double>(ds.size());
}

/// Five-number summary plus mean and population standard deviation.
struct SummaryStats {
    std::size_t count = 0;
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;
    double min = 0.0;
    double max = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;

    bool operator==(const SummaryStats&) const = default;
};

/// Quantile by linear interpolation between order statistics (position p*(n-1)).
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) {
        return 0.0;
    }
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline SummaryStats summarize(std::vector<double> values) {
    SummaryStats s;
    s.count = values.size();
    if (values.empty()) {
        return s;
    }
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(values.size());
    double sq = 0.0;
    for (double v : values) {
        sq += (v - s.mean) * (v - s.mean);
    }
    s.stddev = std::sqrt(sq / static_cast<double>(values.size()));
    s.min = values.front();
    s.max = values.back();
    s.median = quantile_sorted(values, 0.5);
    s.q1 = quantile_sorted(values, 0.25);
    s.q3 = quantile_sorted(values, 0.75);
    return s;
}

}  // namespace vmkm

#endif  // VMKM_METRICS_HPP
