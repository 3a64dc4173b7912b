#ifndef ATTENUO_ERRORS_HPP
#define ATTENUO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace attenuo {

// Bad parameters or arguments outside the mathematical domain of an operation.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A computation produced values outside its numerical contract
// (branch-cut hits, vanishing denominators, non-real residues, ...).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// A quadrature failed its self-convergence check.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace attenuo

#endif
