#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace despeckle {

enum class ErrorKind {
    FileNotFound,
    MalformedFile,
    UnsupportedDepth,
    IoError,
    DomainMismatch,
    DimensionMismatch,
    InvalidVariance,
    InvalidWindow,
    WindowTooLarge,
    InvalidArgument,
    MissingSeries,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the toolkit. kind() is stable and meant for
/// dispatch; what() is a one-line human diagnostic.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace despeckle
