#ifndef WEYLFLOW_POLYNOMIAL_HPP
#define WEYLFLOW_POLYNOMIAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weylflow/context.hpp"
#include "weylflow/rational.hpp"

namespace weylflow {

// Exponent vector; length always equals the context size, entries >= 0.
using Exponents = std::vector<std::uint32_t>;

// Graded lexicographic order: total degree first, ties broken
// lexicographically with earlier context symbols more significant.
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

// Sparse multivariate polynomial over BigRational. Terms are kept in
// ascending graded-lex order (leading term last); no zero coefficients are
// ever stored. Immutable in spirit: every operation returns a new value.
class Polynomial {
public:
    using TermMap = std::map<Exponents, BigRational, GradedLexLess>;

    explicit Polynomial(const Context& ctx) : ctx_(&ctx) {}

    static Polynomial constant(const Context& ctx, const BigRational& c);
    static Polynomial variable(const Context& ctx, int var);
    static Polynomial variable(const Context& ctx, std::string_view name);
    static Polynomial monomial(const Context& ctx, Exponents e, const BigRational& c);

    const Context& context() const { return *ctx_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Requires is_constant(); the zero polynomial yields 0.
    BigRational constant_value() const;

    // -1 for the zero polynomial.
    int total_degree() const;
    int degree_in(int var) const;
    bool contains(int var) const;

    const Exponents& leading_exponents() const { return std::prev(terms_.end())->first; }
    const BigRational& leading_coefficient() const { return std::prev(terms_.end())->second; }

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const BigRational& c) const;
    Polynomial pow(unsigned n) const;

    Polynomial derivative(int var) const;

    // Exact evaluation; `point` binds every context symbol by index.
    BigRational eval(std::span<const BigRational> point) const;
    double eval_double(std::span<const double> point) const;

    // Coefficient of var^k as a polynomial with the var-exponent zeroed out.
    Polynomial coeff_of(int var, std::uint32_t k) const;
    // Multiply by var^k.
    Polynomial shift_var(int var, std::uint32_t k) const;
    // Substitute a polynomial for one variable (used for the parameter
    // constraint); result stays polynomial.
    Polynomial substitute_var(int var, const Polynomial& image) const;

    bool operator==(const Polynomial& o) const;

    // Canonical human-readable form, leading term first: "2*f0^2*g1 - 1/3".
    std::string str() const;

    // Quotient when b exactly divides a, std::nullopt otherwise.
    static std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

    // Multivariate gcd, Z-primitive with positive leading coefficient.
    // gcd(0, b) = b up to normalization; gcd(0, 0) = 0.
    friend Polynomial gcd(const Polynomial& a, const Polynomial& b);

    void add_term(const Exponents& e, const BigRational& c); // accumulate, trims zeros

private:
    void check_same_context(const Polynomial& o) const;

    const Context* ctx_;
    TermMap terms_;
};

Polynomial gcd(const Polynomial& a, const Polynomial& b);

} // namespace weylflow

#endif
