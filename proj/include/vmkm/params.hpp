#ifndef VMKM_PARAMS_HPP
#define VMKM_PARAMS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>

#include "error.hpp"

namespace vmkm {

/// Configuration of a VMKM run.
struct VmkmParams {
    std::size_t k = 5;
    double alpha0 = 0.30;
    std::size_t max_main_iterations = 100;
    double stall_fraction = 0.01;
    std::size_t stall_consecutive = 3;
    std::size_t max_nested_iterations = 500;
    double covariance_epsilon = 1e-6;
    std::uint64_t seed = 0;
    /// Apply the main-loop decay to alpha_a (literal reading) instead of alpha_b.
    bool strict_eq10 = false;

    void validate() const {
        if (k < 1) {
            throw Error(ErrorKind::InvalidParameter, "k must be at least 1");
        }
        if (!(alpha0 > 0.0 && alpha0 < 1.0 / 3.0)) {
            throw Error(ErrorKind::InvalidParameter, "alpha0 must lie in the open interval (0, 1/3)");
        }
        if (!(stall_fraction > 0.0 && stall_fraction < 1.0)) {
            throw Error(ErrorKind::InvalidParameter, "stall_fraction must lie in (0, 1)");
        }
        if (max_main_iterations < 1 || stall_consecutive < 1 || max_nested_iterations < 1) {
            throw Error(ErrorKind::InvalidParameter, "iteration caps must be at least 1");
        }
        if (!(covariance_epsilon > 0.0)) {
            throw Error(ErrorKind::InvalidParameter, "covariance_epsilon must be positive");
        }
    }
};

/// The two fitness-ratio thresholds; both start at alpha0 and only shrink.
struct AlphaState {
    double alpha_a = 0.0;
    double alpha_b = 0.0;

    static AlphaState initial(double alpha0) { return {alpha0, alpha0}; }

    bool operator==(const AlphaState&) const = default;
};

/// alpha_a <- alpha_a - alpha_a / k
inline AlphaState update_alpha_a(AlphaState alphas, std::size_t k) {
    alphas.alpha_a -= alphas.alpha_a / static_cast<double>(k);
    return alphas;
}

/// alpha_b <- alpha_b - alpha_b / k
inline AlphaState update_alpha_b(AlphaState alphas, std::size_t k) {
    alphas.alpha_b -= alphas.alpha_b / static_cast<double>(k);
    return alphas;
}

/// Shared configuration of the comparison algorithms.
struct BaselineParams {
    std::size_t k = 5;
    std::size_t max_iterations = 100;
    double tolerance = 1e-4;
    double fcm_fuzzifier = 2.0;
    /// Fitness-ratio threshold of classical moving k-means.
    double alpha0 = 0.30;
    /// nullopt selects the median heuristic.
    std::optional<double> rbf_gamma;
    std::size_t gram_cap = 20000;
    std::uint64_t seed = 0;

    void validate() const {
        if (k < 1) {
            throw Error(ErrorKind::InvalidParameter, "k must be at least 1");
        }
        if (max_iterations < 1) {
            throw Error(ErrorKind::InvalidParameter, "max_iterations must be at least 1");
        }
        if (!(tolerance > 0.0)) {
            throw Error(ErrorKind::InvalidParameter, "tolerance must be positive");
        }
        if (!(fcm_fuzzifier > 1.0)) {
            throw Error(ErrorKind::InvalidParameter, "fcm fuzzifier must exceed 1");
        }
        if (!(alpha0 > 0.0 && alpha0 < 1.0 / 3.0)) {
            throw Error(ErrorKind::InvalidParameter, "alpha0 must lie in the open interval (0, 1/3)");
        }
        if (rbf_gamma && !(*rbf_gamma > 0.0)) {
            throw Error(ErrorKind::NonPositiveGamma, "rbf gamma must be positive");
        }
    }
};

}  // namespace vmkm

#endif  // VMKM_PARAMS_HPP
