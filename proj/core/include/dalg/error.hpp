#ifndef DALG_ERROR_HPP
#define DALG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dalg {

// Base class for all failures raised by the library.  Callers that only
// care about success vs hard failure can catch this one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operands live in different coefficient domains (or different moduli).
struct DomainMismatch : Error {
    explicit DomainMismatch(const std::string& msg) : Error(msg) {}
};

// A coefficient beyond the known truncation order was requested.
struct TruncationError : Error {
    explicit TruncationError(const std::string& msg) : Error(msg) {}
};

// Division by a non-unit, sqrt of a non-square, reduction at a bad prime, ...
struct ArithmeticError : Error {
    explicit ArithmeticError(const std::string& msg) : Error(msg) {}
};

// Malformed input file or config.
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// A guessing cell needs more series terms than are available.
struct InsufficientTerms : Error {
    explicit InsufficientTerms(const std::string& msg) : Error(msg) {}
};

struct SolverOverflowBudget : Error {
    explicit SolverOverflowBudget(const std::string& msg) : Error(msg) {}
};

struct NonUniqueExtension : Error {
    explicit NonUniqueExtension(const std::string& msg) : Error(msg) {}
};

struct Inconsistent : Error {
    explicit Inconsistent(const std::string& msg) : Error(msg) {}
};

// Guessing requires a prime modulus (r = 1).
struct NonPrimeModulus : Error {
    explicit NonPrimeModulus(const std::string& msg) : Error(msg) {}
};

} // namespace dalg

#endif
