#ifndef VMKM_SYNTHETIC_HPP
#define VMKM_SYNTHETIC_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dataset.hpp"
#include "random.hpp"

namespace vmkm::synthetic {

/// One-dimensional Gaussian blobs, `per_blob` draws around each mean, blob by blob.
inline Dataset gaussian_blobs_1d(const std::vector<double>& means, double stddev, std::size_t per_blob,
                                 std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> values;
    values.reserve(means.size() * per_blob);
    for (double mean : means) {
        for (std::size_t i = 0; i < per_blob; ++i) {
            values.push_back(rng.normal(mean, stddev));
        }
    }
    return dataset_from_values(values);
}

/// Isotropic Gaussian blobs in d dimensions.
inline Dataset gaussian_blobs(const std::vector<Point>& means, double stddev, std::size_t per_blob,
                              std::uint64_t seed) {
    Rng rng(seed);
    const auto d = means.front().size();
    ElementMatrix elements(static_cast<Eigen::Index>(means.size() * per_blob), d);
    Eigen::Index row = 0;
    for (const auto& mean : means) {
        for (std::size_t i = 0; i < per_blob; ++i, ++row) {
            for (Eigen::Index c = 0; c < d; ++c) {
                elements(row, c) = rng.normal(mean(c), stddev);
            }
        }
    }
    return validate_dataset(std::move(elements));
}

inline Dataset uniform_noise(std::size_t n, std::size_t d, double lo, double hi, std::uint64_t seed) {
    Rng rng(seed);
    ElementMatrix elements(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < elements.rows(); ++i) {
        for (Eigen::Index c = 0; c < elements.cols(); ++c) {
            elements(i, c) = lo + (hi - lo) * rng.uniform();
        }
    }
    return validate_dataset(std::move(elements));
}

/// Square image split into four flat quadrants: top-left, top-right,
/// bottom-left, bottom-right take `tones[0..3]`.
inline Dataset quadrant_image(std::size_t side, const std::vector<double>& tones) {
    ElementMatrix elements(static_cast<Eigen::Index>(side * side), 1);
    const std::size_t half = side / 2;
    for (std::size_t r = 0; r < side; ++r) {
        for (std::size_t c = 0; c < side; ++c) {
            const std::size_t quadrant = (r >= half ? 2 : 0) + (c >= half ? 1 : 0);
            elements(static_cast<Eigen::Index>(r * side + c), 0) = tones[quadrant];
        }
    }
    return validate_dataset(std::move(elements), ImageShape{side, side, 255});
}

/// Image of independent uniform grey levels in [0, maxval].
inline Dataset random_image(std::size_t height, std::size_t width, unsigned maxval, std::uint64_t seed) {
    Rng rng(seed);
    ElementMatrix elements(static_cast<Eigen::Index>(height * width), 1);
    for (Eigen::Index i = 0; i < elements.rows(); ++i) {
        elements(i, 0) = static_cast<double>(rng.uniform_index(maxval + 1ULL));
    }
    return validate_dataset(std::move(elements), ImageShape{height, width, maxval});
}

}  // namespace vmkm::synthetic

#endif  // VMKM_SYNTHETIC_HPP
