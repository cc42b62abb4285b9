#pragma once

#include <stdexcept>
#include <string>

namespace rmfrac {

// Argument outside the domain a function is defined on (e.g. gamma(x <= 0)).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Result not representable as a finite double.
struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

// Iterative evaluation (series, quadrature) did not reach its tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two series built under different fractional orders were combined.
struct ContextMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A Caputo derivative would push a multi-index below zero.
struct IllFormedExponent : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TermCapExceeded : std::length_error {
    using std::length_error::length_error;
};

struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// rk4 called with a fractional order.
struct NonIntegerOrder : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A time stepper produced NaN or infinity.
struct NonFiniteState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace rmfrac
