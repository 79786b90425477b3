#pragma once

#include <stdexcept>
#include <string>

namespace apmub {

// Precondition / domain violations (CLI exit code 2).
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A verification that was expected to hold failed (CLI exit code 3).
struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested resource cannot be produced, e.g. no real Hadamard matrix
// of the requested order was found (CLI exit code 4).
struct UnavailableError : std::runtime_error {
    explicit UnavailableError(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal invariant broke; indicates a bug, not a user error.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace apmub
