#pragma once

#include <stdexcept>
#include <string>

namespace isphere {

/// Caller violated a documented precondition (bad dimensions, off-grid endpoint, ...).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A structure failed its invariants (d^2 != 0, non-commuting square, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A mathematical hypothesis of an operation does not hold (non-tame input,
/// non-monomorphism, non-simply-connected algebra). Carries a human-readable witness.
class HypothesisError : public std::runtime_error {
public:
    HypothesisError(const std::string& what, std::string witness_json = "{}")
        : std::runtime_error(what), witness_(std::move(witness_json)) {}
    const std::string& witness() const noexcept { return witness_; }

private:
    std::string witness_;
};

} // namespace isphere
