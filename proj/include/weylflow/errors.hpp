#ifndef WEYLFLOW_ERRORS_HPP
#define WEYLFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace weylflow {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arithmetic with mismatched variable contexts.
struct ContextMismatch : Error {
    using Error::Error;
};

// Exact division by a zero value, or a substitution/evaluation that makes a
// denominator identically zero.
struct DivisionByZero : Error {
    using Error::Error;
};

// A map was applied at a point where one of its image denominators vanishes.
// `divisor` is the canonical string of the vanishing denominator.
struct PoleHit : Error {
    std::string divisor;
    PoleHit(const std::string& map_name, std::string div)
      : Error("pole of map '" + map_name + "' at divisor " + div)
      , divisor(std::move(div)) {}
};

// Symbolic composition produced an identically-zero denominator.
struct DegenerateComposition : Error {
    using Error::Error;
};

// Numeric field evaluation at a fixed singularity (T = 0).
struct SingularEvaluation : Error {
    using Error::Error;
};

// Invalid integration domain, e.g. a T-interval containing 0.
struct DomainError : Error {
    using Error::Error;
};

// Sampled verification could not find enough pole-free points.
struct ExhaustedResampling : Error {
    using Error::Error;
};

// Every trajectory sample fell on a pole of the map being applied.
struct AllSamplesPoles : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

} // namespace weylflow

#endif
