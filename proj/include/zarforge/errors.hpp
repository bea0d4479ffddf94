#ifndef ZARFORGE_ERRORS_HPP
#define ZARFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zarforge {

/// Malformed input text (matrix files, CSV registries, checkpoints).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// An instance exceeds a resource guard (enumeration or exhaustive-search size caps).
struct GuardError : std::runtime_error {
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

/// A checkpoint file whose trailing checksum does not match its content.
struct ChecksumError : ParseError {
    explicit ChecksumError(const std::string& what) : ParseError(what) {}
};

} // namespace zarforge

#endif
