#ifndef VMKM_ERROR_HPP
#define VMKM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace vmkm {

/// Every failure raised by the library carries one of these kinds so
/// callers (notably the CLI) can map them onto exit codes.
enum class ErrorKind {
    EmptyDataset,
    RaggedDimensions,
    NonFiniteValue,
    KTooLarge,
    DimensionMismatch,
    NonPositiveGamma,
    GramTooLarge,
    BadClusterIndex,
    InvalidParameter,
    IoError,
    ParseError,
    UnsupportedFormat,
    CorruptHeader,
    NoImageShape,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::EmptyDataset: return "EmptyDataset";
        case ErrorKind::RaggedDimensions: return "RaggedDimensions";
        case ErrorKind::NonFiniteValue: return "NonFiniteValue";
        case ErrorKind::KTooLarge: return "KTooLarge";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NonPositiveGamma: return "NonPositiveGamma";
        case ErrorKind::GramTooLarge: return "GramTooLarge";
        case ErrorKind::BadClusterIndex: return "BadClusterIndex";
        case ErrorKind::InvalidParameter: return "InvalidParameter";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::UnsupportedFormat: return "UnsupportedFormat";
        case ErrorKind::CorruptHeader: return "CorruptHeader";
        case ErrorKind::NoImageShape: return "NoImageShape";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace vmkm

#endif  // VMKM_ERROR_HPP
