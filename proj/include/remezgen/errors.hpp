#pragma once

#include <stdexcept>
#include <string>

namespace remez {

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CapabilityError : std::runtime_error {
    explicit CapabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Singular or ill-conditioned node geometry.  Carries the condition number
// of the offending linear system when known.
struct DegeneracyError : std::runtime_error {
    explicit DegeneracyError(const std::string& msg, double cond = 0.0)
        : std::runtime_error(msg), condition_number(cond) {}
    double condition_number;
};

struct NonDecayingSystemError : std::runtime_error {
    explicit NonDecayingSystemError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InitializationError : std::runtime_error {
    explicit InitializationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConstraintError : std::runtime_error {
    explicit ConstraintError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace remez
