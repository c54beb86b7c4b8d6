#ifndef VMKM_DISTANCES_HPP
#define VMKM_DISTANCES_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "dataset.hpp"
#include "error.hpp"

namespace vmkm {

/// Absolute floor added to the diagonal so that all-zero covariances stay invertible.
inline constexpr double kCovarianceFloor = 1e-12;

/**
 * @brief A cluster covariance S after diagonal regularization, with S^-1 cached.
 *
 * `epsilon_applied` is the ridge actually added to every diagonal entry.
 */
struct RegularizedCovariance {
    Eigen::MatrixXd matrix;
    Eigen::MatrixXd inverse;
    double epsilon_applied = 0.0;

    static RegularizedCovariance identity(std::size_t dim) {
        const auto d = static_cast<Eigen::Index>(dim);
        return {Eigen::MatrixXd::Identity(d, d), Eigen::MatrixXd::Identity(d, d), 0.0};
    }

    std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }

    bool operator==(const RegularizedCovariance&) const = default;
};

namespace detail {

// Adds the ridge and inverts through a Cholesky factorization. Accumulated
// rounding can leave a sample covariance a hair indefinite, so the ridge is
// grown until the factorization succeeds.
inline RegularizedCovariance regularize(Eigen::MatrixXd scatter, double epsilon) {
    const auto d = scatter.rows();
    scatter = 0.5 * (scatter + scatter.transpose()).eval();
    double ridge = epsilon * scatter.trace() / static_cast<double>(d) + kCovarianceFloor;
    for (int attempt = 0; attempt < 32; ++attempt) {
        Eigen::MatrixXd regularized = scatter;
        regularized.diagonal().array() += ridge;
        Eigen::LLT<Eigen::MatrixXd> llt(regularized);
        if (llt.info() == Eigen::Success) {
            Eigen::MatrixXd inverse = llt.solve(Eigen::MatrixXd::Identity(d, d));
            inverse = 0.5 * (inverse + inverse.transpose()).eval();
            return {std::move(regularized), std::move(inverse), ridge};
        }
        ridge *= 10.0;
    }
    return RegularizedCovariance::identity(static_cast<std::size_t>(d));
}

}  // namespace detail

/**
 * @brief Sample covariance (divisor n) of a cluster's members plus a diagonal ridge.
 *
 * The ridge is `epsilon * trace(S) / D + 1e-12`. Clusters with fewer than two
 * members fall back to the identity matrix.
 */
inline RegularizedCovariance estimate_cluster_covariance(const Dataset& ds,
                                                         std::span<const std::size_t> members,
                                                         double epsilon) {
    const auto d = static_cast<Eigen::Index>(ds.dim());
    if (members.size() < 2) {
        return RegularizedCovariance::identity(ds.dim());
    }
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (std::size_t i : members) {
        mean += ds.element(i);
    }
    mean /= static_cast<double>(members.size());
    Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i : members) {
        const Eigen::VectorXd diff = ds.element(i) - mean;
        scatter.noalias() += diff * diff.transpose();
    }
    scatter /= static_cast<double>(members.size());
    return detail::regularize(std::move(scatter), epsilon);
}

/// Same estimator over an explicit list of feature vectors of dimension `dim`.
inline RegularizedCovariance estimate_cluster_covariance(const std::vector<Point>& members, double epsilon,
                                                         std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    for (const auto& m : members) {
        if (m.size() != d) {
            throw Error(ErrorKind::DimensionMismatch, "member dimensionality differs from covariance dimension");
        }
    }
    if (members.size() < 2) {
        return RegularizedCovariance::identity(dim);
    }
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (const auto& m : members) {
        mean += m;
    }
    mean /= static_cast<double>(members.size());
    Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(d, d);
    for (const auto& m : members) {
        const Eigen::VectorXd diff = m - mean;
        scatter.noalias() += diff * diff.transpose();
    }
    scatter /= static_cast<double>(members.size());
    return detail::regularize(std::move(scatter), epsilon);
}

/// Squared Mahalanobis distance (v - c)^T S^-1 (v - c). No square root is taken.
template <typename VecA, typename VecB>
double mahalanobis_sq(const Eigen::MatrixBase<VecA>& v, const Eigen::MatrixBase<VecB>& c,
                      const RegularizedCovariance& cov) {
    if (v.size() != c.size() || static_cast<std::size_t>(v.size()) != cov.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "mahalanobis_sq operands differ in dimension");
    }
    const Eigen::VectorXd diff = v - c;
    const double value = diff.dot(cov.inverse * diff);
    return value < 0.0 ? 0.0 : value;
}

template <typename VecA, typename VecB>
double euclidean_sq(const Eigen::MatrixBase<VecA>& v, const Eigen::MatrixBase<VecB>& c) {
    if (v.size() != c.size()) {
        throw Error(ErrorKind::DimensionMismatch, "euclidean_sq operands differ in dimension");
    }
    return (v - c).squaredNorm();
}

/// exp(-gamma * ||u - v||^2)
template <typename VecA, typename VecB>
double rbf_kernel(const Eigen::MatrixBase<VecA>& u, const Eigen::MatrixBase<VecB>& v, double gamma) {
    if (!(gamma > 0.0)) {
        throw Error(ErrorKind::NonPositiveGamma, "rbf gamma must be positive");
    }
    return std::exp(-gamma * euclidean_sq(u, v));
}

}  // namespace vmkm

#endif  // VMKM_DISTANCES_HPP
