#pragma once

#include <stdexcept>
#include <string>

namespace ilap {

// Malformed input: unknown vertex ids, bad files, inconsistent problem data.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// The requested answer depends on vertices beyond the materialized truncation.
struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

// A documented precondition of an operation does not hold.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// A game strategy returned an illegal move.
struct StrategyError : std::runtime_error {
    explicit StrategyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ilap
