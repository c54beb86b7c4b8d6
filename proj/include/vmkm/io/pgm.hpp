#ifndef VMKM_IO_PGM_HPP
#define VMKM_IO_PGM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "../dataset.hpp"
#include "../error.hpp"
#include "files.hpp"

namespace vmkm::io {

/// Cluster labels of every element, with the source image geometry when known.
struct LabelMap {
    std::vector<std::size_t> labels;
    std::size_t k = 0;
    std::optional<ImageShape> image_shape;
};

namespace detail {

class PgmHeaderReader {
public:
    explicit PgmHeaderReader(std::string_view data) : data_(data) {}

    std::optional<unsigned long> next_number() {
        skip_space_and_comments();
        const std::size_t start = pos_;
        unsigned long value = 0;
        while (pos_ < data_.size() && data_[pos_] >= '0' && data_[pos_] <= '9') {
            value = value * 10 + static_cast<unsigned long>(data_[pos_] - '0');
            if (value > 0xFFFFFFFFUL) {
                return std::nullopt;
            }
            ++pos_;
        }
        if (pos_ == start) {
            return std::nullopt;
        }
        return value;
    }

    std::size_t position() const { return pos_; }
    std::string_view data() const { return data_; }

private:
    void skip_space_and_comments() {
        while (pos_ < data_.size()) {
            const char c = data_[pos_];
            if (c == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') {
                    ++pos_;
                }
            } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view data_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/**
 * @brief Decodes a plain (P2) or raw (P5) greymap into a one-feature dataset.
 *
 * Intensities keep their original scale; rows are in row-major pixel order.
 * Raw samples are one byte when maxval < 256, otherwise two bytes big-endian.
 */
inline Dataset parse_pgm(std::string_view data) {
    if (data.size() < 2 || data[0] != 'P') {
        throw Error(ErrorKind::UnsupportedFormat, "not a Netpbm file");
    }
    const char kind = data[1];
    if (kind != '2' && kind != '5') {
        throw Error(ErrorKind::UnsupportedFormat, std::string("Netpbm type P") + kind + " is not a greymap (P2/P5)");
    }
    detail::PgmHeaderReader reader(data.substr(2));
    const auto width = reader.next_number();
    const auto height = reader.next_number();
    const auto maxval = reader.next_number();
    if (!width || !height || !maxval || *width == 0 || *height == 0) {
        throw Error(ErrorKind::CorruptHeader, "missing or invalid width, height or maxval");
    }
    if (*maxval == 0 || *maxval > 65535) {
        throw Error(ErrorKind::CorruptHeader, "maxval " + std::to_string(*maxval) + " outside 1..65535");
    }
    const std::size_t n = *width * *height;
    ElementMatrix elements(static_cast<Eigen::Index>(n), 1);
    if (kind == '2') {
        for (std::size_t i = 0; i < n; ++i) {
            const auto sample = reader.next_number();
            if (!sample) {
                throw Error(ErrorKind::ParseError, "pixel " + std::to_string(i) + ": missing or malformed sample");
            }
            if (*sample > *maxval) {
                throw Error(ErrorKind::ParseError, "pixel " + std::to_string(i) + ": sample exceeds maxval");
            }
            elements(static_cast<Eigen::Index>(i), 0) = static_cast<double>(*sample);
        }
    } else {
        // Exactly one whitespace byte separates maxval from the raster.
        std::size_t offset = 2 + reader.position();
        if (offset >= data.size()) {
            throw Error(ErrorKind::CorruptHeader, "raster missing");
        }
        ++offset;
        const std::size_t bytes_per_sample = *maxval < 256 ? 1 : 2;
        if (data.size() - offset < n * bytes_per_sample) {
            throw Error(ErrorKind::ParseError, "raster truncated: expected " + std::to_string(n * bytes_per_sample) +
                                                   " bytes, found " + std::to_string(data.size() - offset));
        }
        for (std::size_t i = 0; i < n; ++i) {
            unsigned sample = static_cast<unsigned char>(data[offset + i * bytes_per_sample]);
            if (bytes_per_sample == 2) {
                sample = (sample << 8) | static_cast<unsigned char>(data[offset + i * 2 + 1]);
            }
            if (sample > *maxval) {
                throw Error(ErrorKind::ParseError, "pixel " + std::to_string(i) + ": sample exceeds maxval");
            }
            elements(static_cast<Eigen::Index>(i), 0) = static_cast<double>(sample);
        }
    }
    return validate_dataset(std::move(elements),
                            ImageShape{*height, *width, static_cast<unsigned>(*maxval)});
}

inline Dataset read_pgm(const std::filesystem::path& path) { return parse_pgm(read_file(path)); }

/// Encodes integer samples as a greymap; `plain` selects P2 instead of P5.
inline std::string format_pgm(const std::vector<unsigned>& samples, const ImageShape& shape, bool plain = false) {
    if (samples.size() != shape.height * shape.width) {
        throw Error(ErrorKind::DimensionMismatch, "sample count does not match image shape");
    }
    std::string out = std::string(plain ? "P2" : "P5") + "\n" + std::to_string(shape.width) + " " +
                      std::to_string(shape.height) + "\n" + std::to_string(shape.maxval) + "\n";
    if (plain) {
        for (std::size_t i = 0; i < samples.size(); ++i) {
            out += std::to_string(samples[i]);
            out += (i + 1) % shape.width == 0 ? '\n' : ' ';
        }
        return out;
    }
    for (unsigned sample : samples) {
        if (shape.maxval >= 256) {
            out += static_cast<char>((sample >> 8) & 0xFF);
        }
        out += static_cast<char>(sample & 0xFF);
    }
    return out;
}

/// Round-to-nearest and clamp into [0, maxval].
inline unsigned quantize_intensity(double value, unsigned maxval) {
    const double rounded = std::round(value);
    return static_cast<unsigned>(std::clamp(rounded, 0.0, static_cast<double>(maxval)));
}

/// Renders each pixel at its cluster's centroid intensity (first feature).
inline std::string format_segmented_pgm(const LabelMap& labels, const std::vector<Point>& centroids) {
    if (!labels.image_shape) {
        throw Error(ErrorKind::NoImageShape, "label map carries no image geometry");
    }
    std::vector<unsigned> samples;
    samples.reserve(labels.labels.size());
    for (std::size_t label : labels.labels) {
        if (label >= centroids.size()) {
            throw Error(ErrorKind::BadClusterIndex, "label " + std::to_string(label) + " has no centroid");
        }
        samples.push_back(quantize_intensity(centroids[label](0), labels.image_shape->maxval));
    }
    return format_pgm(samples, *labels.image_shape);
}

inline void write_segmented_pgm(const std::filesystem::path& path, const LabelMap& labels,
                                const std::vector<Point>& centroids) {
    write_file_atomic(path, format_segmented_pgm(labels, centroids));
}

/// CSV with header `element,label`, plus `row,col` columns for images.
inline std::string format_labels_csv(const LabelMap& labels) {
    std::string out = labels.image_shape ? "element,row,col,label\n" : "element,label\n";
    for (std::size_t i = 0; i < labels.labels.size(); ++i) {
        out += std::to_string(i);
        if (labels.image_shape) {
            out += "," + std::to_string(i / labels.image_shape->width) + "," +
                   std::to_string(i % labels.image_shape->width);
        }
        out += "," + std::to_string(labels.labels[i]) + "\n";
    }
    return out;
}

inline void write_labels_csv(const std::filesystem::path& path, const LabelMap& labels) {
    write_file_atomic(path, format_labels_csv(labels));
}

}  // namespace vmkm::io

#endif  // VMKM_IO_PGM_HPP
