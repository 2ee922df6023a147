#pragma once

#include <stdexcept>
#include <string>

namespace ihall {

// A search (map enumeration, subspace walk, iso search) would exceed its budget.
// Budgets are hard limits: callers either raise them explicitly or get this throw;
// nothing is silently truncated.
struct SearchTooLarge : std::runtime_error {
    SearchTooLarge(const std::string& what_arg, double needed, double budget)
        : std::runtime_error(what_arg + " (needs ~" + std::to_string((long long)needed) +
                             " steps, budget " + std::to_string((long long)budget) + ")"),
          needed(needed), budget(budget) {}
    double needed;
    double budget;
};

struct NotInvertible : std::domain_error {
    using std::domain_error::domain_error;
};

struct CorruptCache : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), pos(pos) {}
    std::size_t pos;
};

struct UnsupportedCartanEntry : std::domain_error {
    using std::domain_error::domain_error;
};

struct AmbiguousLeadingTerm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonCommutingCoefficients : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ihall
