#ifndef WEYLFLOW_RATIONAL_FUNCTION_HPP
#define WEYLFLOW_RATIONAL_FUNCTION_HPP

#include <map>
#include <span>
#include <string>

#include "weylflow/polynomial.hpp"

namespace weylflow {

// Reduced rational function num/den with the canonical normalization:
// gcd(num, den) constant and den's leading coefficient equal to 1. The
// representation is unique, so structural equality decides mathematical
// equality. Values are immutable and safe to share across threads.
class RationalFunction {
public:
    explicit RationalFunction(const Context& ctx); // zero

    static RationalFunction constant(const Context& ctx, const BigRational& c);
    static RationalFunction variable(const Context& ctx, int var);
    static RationalFunction variable(const Context& ctx, std::string_view name);
    static RationalFunction from_poly(Polynomial p);
    // Reduces and normalizes; throws DivisionByZero when den is zero.
    static RationalFunction make(Polynomial num, Polynomial den);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    const Context& context() const { return num_.context(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    RationalFunction operator-() const;
    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const;

    RationalFunction pow(int n) const;

    RationalFunction derivative(int var) const;
    RationalFunction derivative(std::string_view name) const;

    // Exact simultaneous substitution. Bound variables (indices into this
    // context) are replaced by their images, which live in `target`; unbound
    // variables that actually occur must exist in `target` under the same
    // name. Throws DivisionByZero when the denominator collapses to zero.
    RationalFunction substitute(const std::map<int, RationalFunction>& bindings,
                                const Context& target) const;
    RationalFunction substitute(const std::map<std::string, RationalFunction>& bindings,
                                const Context& target) const;

    BigRational eval(std::span<const BigRational> point) const; // DivisionByZero on poles
    double eval_double(std::span<const double> point) const;

    bool operator==(const RationalFunction& o) const;

    std::string str() const;

    const Context* context_ptr() const { return &num_.context(); }

private:
    RationalFunction(Polynomial num, Polynomial den, bool /*canonical_tag*/)
      : num_(std::move(num)), den_(std::move(den)) {}

    Polynomial num_, den_;
};

// Convenience arithmetic with scalars.
RationalFunction operator+(const RationalFunction& a, const BigRational& c);
RationalFunction operator-(const RationalFunction& a, const BigRational& c);
RationalFunction operator*(const RationalFunction& a, const BigRational& c);
RationalFunction operator*(const BigRational& c, const RationalFunction& a);
RationalFunction operator*(long c, const RationalFunction& a);
RationalFunction operator+(long c, const RationalFunction& a);
RationalFunction operator-(long c, const RationalFunction& a);

// a == b after substituting a4 -> 1 - a0 - a1 - 2*a2 - a3 into the numerator
// of the reduced difference. With use_constraint = false this is plain
// canonical equality.
bool equals_mod_constraint(const RationalFunction& a, const RationalFunction& b,
                           bool use_constraint = true);

// The reduced difference a - b with the constraint substitution applied to
// its numerator; "0" exactly when equals_mod_constraint holds.
std::string constraint_residual(const RationalFunction& a, const RationalFunction& b);

// Substitute a4 -> 1 - a0 - a1 - 2*a2 - a3 in a polynomial.
Polynomial reduce_mod_constraint(const Polynomial& p);

} // namespace weylflow

#endif
