#include <limits>
#include <utility>

#include "weylflow/errors.hpp"
#include "weylflow/polynomial.hpp"

// Multivariate gcd over Q by the classical route: scale to Z-primitive
// polynomials, split off contents recursively with respect to a main
// variable, and run a subresultant pseudo-remainder sequence on the
// primitive parts ("Algorithms for Computer Algebra", ch. 7).

namespace weylflow {
namespace {

Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
    auto q = Polynomial::divide_exact(a, b);
    if (!q) throw Error("internal: expected exact polynomial division");
    return *q;
}

BigInt coeff_denominator_lcm(const Polynomial& p) {
    BigInt l(1);
    for (const auto& [e, c] : p.terms()) l = lcm(l, rat_den(c));
    return l;
}

// gcd of the numerators; coefficients must be integral.
BigInt integer_content(const Polynomial& p) {
    BigInt g(0);
    for (const auto& [e, c] : p.terms()) {
        g = gcd(g, rat_num(c));
        if (g == 1) break;
    }
    return g;
}

// Scale to integer coefficients, strip the integer content, make the
// leading coefficient positive.
Polynomial make_integer_primitive(const Polynomial& p) {
    if (p.is_zero()) return p;
    Polynomial q = p * BigRational(coeff_denominator_lcm(p));
    BigInt c = integer_content(q);
    if (q.leading_coefficient() < 0) c = -c;
    return q * (BigRational(1) / BigRational(c));
}

Polynomial leading_coeff_in(const Polynomial& p, int v) {
    return p.coeff_of(v, static_cast<std::uint32_t>(p.degree_in(v)));
}

// Pseudo-remainder of a by b in the variable v: lc_v(b)^(deg a - deg b + 1) * a mod b.
Polynomial pseudo_rem(const Polynomial& a, const Polynomial& b, int v) {
    const int db = b.degree_in(v);
    const Polynomial d = leading_coeff_in(b, v);
    Polynomial r = a;
    int e = a.degree_in(v) - db + 1;
    while (!r.is_zero() && r.degree_in(v) >= db) {
        const int k = r.degree_in(v) - db;
        const Polynomial lr = leading_coeff_in(r, v);
        r = d * r - (lr * b).shift_var(v, static_cast<std::uint32_t>(k));
        --e;
    }
    while (e-- > 0) r = r * d;
    return r;
}

Polynomial gcd_z(const Polynomial& a, const Polynomial& b);

// Content of p with respect to v: gcd of the coefficient polynomials of v^k,
// integer content included.
Polynomial content_in(const Polynomial& p, int v) {
    const int d = p.degree_in(v);
    Polynomial acc(p.context());
    for (int k = 0; k <= d; ++k) {
        Polynomial ck = p.coeff_of(v, static_cast<std::uint32_t>(k));
        if (ck.is_zero()) continue;
        acc = acc.is_zero() ? std::move(ck) : gcd_z(acc, ck);
        if (acc.is_constant() && abs(acc.constant_value()) == 1) break;
    }
    return acc;
}

// Subresultant PRS on v-primitive inputs; the caller strips content from
// the returned last nonzero element.
Polynomial subresultant_prs(Polynomial r0, Polynomial r1, int v) {
    if (r0.degree_in(v) < r1.degree_in(v)) std::swap(r0, r1);
    const Context& ctx = r0.context();
    Polynomial g = Polynomial::constant(ctx, BigRational(1));
    Polynomial h = g;
    while (true) {
        const int delta = r0.degree_in(v) - r1.degree_in(v);
        Polynomial rem = pseudo_rem(r0, r1, v);
        if (rem.is_zero()) return r1;
        if (rem.degree_in(v) == 0) return Polynomial::constant(ctx, BigRational(1));
        const Polynomial divisor = g * h.pow(static_cast<unsigned>(delta));
        r0 = std::move(r1);
        r1 = exact_div(rem, divisor);
        g = leading_coeff_in(r0, v);
        if (delta > 0) {
            h = exact_div(g.pow(static_cast<unsigned>(delta)),
                          h.pow(static_cast<unsigned>(delta - 1)));
        }
    }
}

// Both inputs nonzero with integer coefficients; result includes the
// common integer content and has a positive leading coefficient.
Polynomial gcd_z(const Polynomial& a, const Polynomial& b) {
    const Context& ctx = a.context();
    BigInt ia = integer_content(a), ib = integer_content(b);
    const BigInt ig = gcd(ia, ib);
    if (a.is_constant() || b.is_constant()) {
        return Polynomial::constant(ctx, BigRational(ig));
    }

    Polynomial pa = a * (BigRational(1) / BigRational(ia));
    Polynomial pb = b * (BigRational(1) / BigRational(ib));

    // main variable: a shared one with the smallest min-degree
    int v = -1, best = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        const int da = pa.degree_in(static_cast<int>(i));
        const int db = pb.degree_in(static_cast<int>(i));
        if (da > 0 && db > 0 && std::min(da, db) < best) {
            best = std::min(da, db);
            v = static_cast<int>(i);
        }
    }
    if (v < 0) return Polynomial::constant(ctx, BigRational(ig));

    const Polynomial ca = content_in(pa, v);
    const Polynomial cb = content_in(pb, v);
    const Polynomial cg = gcd_z(ca, cb);
    const Polynomial ppa = ca.is_constant() && ca.constant_value() == 1 ? pa : exact_div(pa, ca);
    const Polynomial ppb = cb.is_constant() && cb.constant_value() == 1 ? pb : exact_div(pb, cb);

    Polynomial raw = subresultant_prs(ppa, ppb, v);
    Polynomial pp = raw.is_constant() ? Polynomial::constant(ctx, BigRational(1))
                                      : exact_div(raw, content_in(raw, v));
    Polynomial result = make_integer_primitive(cg * pp);
    return result * BigRational(ig);
}

// Monomial fast path: min exponents across every term; constants are units
// over Q, so coefficient 1.
Polynomial gcd_with_monomial(const Polynomial& mono, const Polynomial& other) {
    const Context& ctx = mono.context();
    const std::size_t n = ctx.size();
    Exponents ge = mono.terms().begin()->first;
    for (const auto& [e, c] : other.terms()) {
        for (std::size_t i = 0; i < n; ++i) ge[i] = std::min(ge[i], e[i]);
        (void)c;
    }
    return Polynomial::monomial(ctx, std::move(ge), BigRational(1));
}

} // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (&a.context() != &b.context()) {
        throw ContextMismatch("gcd across different contexts");
    }
    if (a.is_zero()) return make_integer_primitive(b);
    if (b.is_zero()) return make_integer_primitive(a);
    if (a.term_count() == 1) return gcd_with_monomial(a, b);
    if (b.term_count() == 1) return gcd_with_monomial(b, a);
    return gcd_z(make_integer_primitive(a), make_integer_primitive(b));
}

} // namespace weylflow
