#pragma once

#include <stdexcept>
#include <string>

namespace hypercone {

// Error categories used across the library. All carry a message and derive
// from std::runtime_error so callers can be as coarse or fine as they like.
struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegeneracyError : std::runtime_error {
    explicit DegeneracyError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SignatureError : std::runtime_error {
    explicit SignatureError(const std::string& msg) : std::runtime_error(msg) {}
};

// Hyperboloid-model constraint violations (non-timelike vectors, points off
// the sheet, products outside arccosh range).
struct ModelError : std::runtime_error {
    explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PoleError : std::runtime_error {
    explicit PoleError(const std::string& msg) : std::runtime_error(msg) {}
};

struct EvaluationError : std::runtime_error {
    explicit EvaluationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hypercone
