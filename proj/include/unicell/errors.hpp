#pragma once

#include <stdexcept>
#include <string>

namespace unicell {

// Dimension or index precondition violated.
struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An iterative solver failed to reach its stopping criterion.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numerical rank decision fell into the ambiguous band between
// "clearly dependent" and "clearly independent".
struct rank_ambiguity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A least-squares solve left a residual too large for the requested
// membership claim (e.g. T is not a polynomial in R).
struct not_in_algebra_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input violates a structural hypothesis the algorithm needs
// (triangular shape, constant diagonal, nonvanishing superdiagonal, ...).
struct hypothesis_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Oracle answers are mutually inconsistent, or the oracle transport failed.
struct oracle_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An enumeration would exceed its configured work budget.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace unicell
