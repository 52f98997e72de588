#ifndef WEYLFLOW_RATIONAL_HPP
#define WEYLFLOW_RATIONAL_HPP

#include <optional>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace weylflow {

// Exact arbitrary-precision arithmetic. GMP keeps rationals canonical:
// positive denominator, fully reduced, zero stored as 0/1.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using BigRational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

inline BigInt rat_num(const BigRational& q) { return numerator(q); }
inline BigInt rat_den(const BigRational& q) { return denominator(q); }

inline bool is_integer(const BigRational& q) { return rat_den(q) == 1; }

// "p", "-p" or "p/q" with q > 0 after sign normalization. Rejects anything
// else (decimals go down the numeric path).
std::optional<BigRational> parse_rational(const std::string& text);

std::string to_string(const BigRational& q);

} // namespace weylflow

#endif
