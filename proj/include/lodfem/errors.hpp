#pragma once

#include <stdexcept>
#include <string>

namespace lodfem {

// Invalid user-facing configuration (bad levels, inadmissible exponents,
// malformed input files). Maps to CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Iterative solver failed to reach its tolerance. Maps to CLI exit code 3.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical breakdown in a direct kernel (Cholesky/LU on a matrix that
// should have been SPD/regular).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace lodfem
