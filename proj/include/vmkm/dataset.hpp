#ifndef VMKM_DATASET_HPP
#define VMKM_DATASET_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"

namespace vmkm {

/// A single feature vector (a grey level is the one-dimensional case).
using Point = Eigen::VectorXd;

/// Row-major element storage: row i is element i.
using ElementMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct ImageShape {
    std::size_t height = 0;
    std::size_t width = 0;
    unsigned maxval = 255;

    bool operator==(const ImageShape&) const = default;
};

/**
 * @brief The universe to be partitioned: n elements with d real features each.
 *
 * Element ids are the row indices 0..n-1. When the dataset was decoded from an
 * image, `image_shape` records its geometry and the rows are in row-major
 * pixel order.
 */
class Dataset {
public:
    Dataset() = default;

    std::size_t size() const { return static_cast<std::size_t>(elements_.rows()); }
    std::size_t dim() const { return static_cast<std::size_t>(elements_.cols()); }

    const ElementMatrix& elements() const { return elements_; }

    auto element(std::size_t i) const { return elements_.row(static_cast<Eigen::Index>(i)).transpose(); }

    const std::optional<ImageShape>& image_shape() const { return image_shape_; }

    friend Dataset validate_dataset(ElementMatrix elements, std::optional<ImageShape> shape);

private:
    ElementMatrix elements_;
    std::optional<ImageShape> image_shape_;
};

/// Checks a dense element matrix (no ragged rows possible) and wraps it.
inline Dataset validate_dataset(ElementMatrix elements, std::optional<ImageShape> shape = std::nullopt) {
    if (elements.rows() == 0 || elements.cols() == 0) {
        throw Error(ErrorKind::EmptyDataset, "dataset has no elements");
    }
    for (Eigen::Index i = 0; i < elements.rows(); ++i) {
        for (Eigen::Index j = 0; j < elements.cols(); ++j) {
            if (!std::isfinite(elements(i, j))) {
                throw Error(ErrorKind::NonFiniteValue,
                            "element " + std::to_string(i) + " component " + std::to_string(j));
            }
        }
    }
    if (shape) {
        if (shape->height * shape->width != static_cast<std::size_t>(elements.rows())) {
            throw Error(ErrorKind::DimensionMismatch, "image shape does not match element count");
        }
        if (elements.cols() != 1) {
            throw Error(ErrorKind::DimensionMismatch, "image datasets are single-channel");
        }
    }
    Dataset ds;
    ds.elements_ = std::move(elements);
    ds.image_shape_ = shape;
    return ds;
}

/// Builds a dataset from a list of feature vectors.
inline Dataset validate_dataset(const std::vector<std::vector<double>>& raw) {
    if (raw.empty()) {
        throw Error(ErrorKind::EmptyDataset, "dataset has no elements");
    }
    const std::size_t d = raw.front().size();
    if (d == 0) {
        throw Error(ErrorKind::EmptyDataset, "elements have no features");
    }
    ElementMatrix elements(static_cast<Eigen::Index>(raw.size()), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].size() != d) {
            throw Error(ErrorKind::RaggedDimensions, "element " + std::to_string(i) + " has " +
                                                         std::to_string(raw[i].size()) +
                                                         " features, expected " + std::to_string(d));
        }
        for (std::size_t j = 0; j < d; ++j) {
            elements(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = raw[i][j];
        }
    }
    return validate_dataset(std::move(elements));
}

/// Convenience for one-dimensional data such as grey levels.
inline Dataset dataset_from_values(const std::vector<double>& values) {
    ElementMatrix elements(static_cast<Eigen::Index>(values.size()), 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
        elements(static_cast<Eigen::Index>(i), 0) = values[i];
    }
    return validate_dataset(std::move(elements));
}

inline Point make_point(std::initializer_list<double> values) {
    Point p(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double v : values) {
        p(i++) = v;
    }
    return p;
}

}  // namespace vmkm

#endif  // VMKM_DATASET_HPP
