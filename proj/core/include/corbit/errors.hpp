#pragma once

#include <stdexcept>
#include <string>

namespace corbit {

// A certified evaluation could not reach the requested tolerance within
// its work budget. Carries the best bound that was achieved so callers
// can decide whether the partial answer is still useful.
class ToleranceError : public std::runtime_error {
public:
    ToleranceError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_bound(achieved) {}
    double achieved_bound;
};

// An enumeration or table build whose predicted cost exceeds the caller
// supplied budget; thrown before any work is done.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace corbit
