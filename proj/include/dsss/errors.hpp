// Error types shared across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace dsss {

/// Malformed input data (wrong shape, illegal characters).
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally well-formed input that violates a domain invariant.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical routine failed to reach its accuracy target.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dsss
