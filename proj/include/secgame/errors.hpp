#pragma once

#include <stdexcept>
#include <string>

namespace secgame {

// Malformed input files (edge lists, JSON documents).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Violated preconditions or domain invariants (bad instance data, calling an
// isolated-only routine on a sharing instance, infeasible residual vectors).
class ContractError : public std::runtime_error {
public:
    explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure inside the LP solver. Never used to signal an infeasible
// or unbounded program; those are ordinary LpSolution statuses.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// An algorithm detected that one of its own guarantees broke down at runtime
// (e.g. the rounding loop failed to make progress).
class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace secgame
