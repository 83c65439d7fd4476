#pragma once

#include <stdexcept>
#include <string>

namespace clb {

// Error taxonomy shared by all modules. Each category maps to a distinct
// failure mode so callers (and the CLI exit-code mapping) can tell them apart.

// Shape/length disagreements between values that must be conformant.
struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration: bad weights, out-of-range hyperparameters, schema violations.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite values or other numeric breakdowns.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed persisted data (bad magic, truncated payload, checksum mismatch).
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Violations of the collaboration protocol (e.g. training a test-only client).
struct ProtocolError : std::runtime_error {
    explicit ProtocolError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem failures.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace clb
