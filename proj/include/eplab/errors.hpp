#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eplab {

/// Operand shapes do not fit the requested operation.
class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A rank precondition failed (rank-not-one, singular basis, degenerate pivoting).
class rank_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Iterative decomposition did not converge within the sweep budget.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, std::size_t iterations)
        : std::runtime_error(what + " (after " + std::to_string(iterations) + " sweeps)"),
          iterations_(iterations) {}

    std::size_t iterations() const noexcept { return iterations_; }

private:
    std::size_t iterations_;
};

/// Malformed input document (JSON matrix or constraint-spec file).
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A verified postcondition failed; indicates a bug, not bad input.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace eplab
