#ifndef VMKM_INIT_HPP
#define VMKM_INIT_HPP

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "dataset.hpp"
#include "error.hpp"
#include "random.hpp"

namespace vmkm {

/// k distinct element indices drawn uniformly without replacement (partial
/// Fisher-Yates), in draw order.
inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k > n) {
        throw Error(ErrorKind::KTooLarge, "cannot draw " + std::to_string(k) + " centers from " +
                                              std::to_string(n) + " elements");
    }
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

/// Forgy initialization: the centers are k distinct elements of the dataset.
inline std::vector<Point> init_centers_random(const Dataset& ds, std::size_t k, std::uint64_t seed) {
    if (k < 1) {
        throw Error(ErrorKind::InvalidParameter, "k must be at least 1");
    }
    std::vector<Point> centers;
    centers.reserve(k);
    for (std::size_t i : sample_indices(ds.size(), k, seed)) {
        centers.emplace_back(ds.element(i));
    }
    return centers;
}

/// Accepts caller-chosen centers verbatim, including ones far outside the data.
inline std::vector<Point> init_centers_explicit(const Dataset& ds, std::vector<Point> centers) {
    if (centers.empty()) {
        throw Error(ErrorKind::InvalidParameter, "at least one center is required");
    }
    for (const auto& c : centers) {
        if (static_cast<std::size_t>(c.size()) != ds.dim()) {
            throw Error(ErrorKind::DimensionMismatch, "center has " + std::to_string(c.size()) +
                                                          " components, dataset has " +
                                                          std::to_string(ds.dim()));
        }
    }
    return centers;
}

}  // namespace vmkm

#endif  // VMKM_INIT_HPP
