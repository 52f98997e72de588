#include "weylflow/rational_function.hpp"

#include <utility>

#include "weylflow/errors.hpp"

namespace weylflow {

namespace {

Polynomial exact_div(const Polynomial& a, const Polynomial& b) {
    auto q = Polynomial::divide_exact(a, b);
    if (!q) throw Error("internal: expected exact polynomial division");
    return *q;
}

Polynomial one_poly(const Context& ctx) {
    return Polynomial::constant(ctx, BigRational(1));
}

} // namespace

RationalFunction::RationalFunction(const Context& ctx)
  : num_(ctx), den_(one_poly(ctx)) {}

RationalFunction RationalFunction::constant(const Context& ctx, const BigRational& c) {
    return RationalFunction(Polynomial::constant(ctx, c), one_poly(ctx), true);
}

RationalFunction RationalFunction::variable(const Context& ctx, int var) {
    return RationalFunction(Polynomial::variable(ctx, var), one_poly(ctx), true);
}

RationalFunction RationalFunction::variable(const Context& ctx, std::string_view name) {
    return RationalFunction(Polynomial::variable(ctx, name), one_poly(ctx), true);
}

RationalFunction RationalFunction::from_poly(Polynomial p) {
    const Context& ctx = p.context();
    return RationalFunction(std::move(p), one_poly(ctx), true);
}

RationalFunction RationalFunction::make(Polynomial num, Polynomial den) {
    if (&num.context() != &den.context()) {
        throw ContextMismatch("rational function num/den contexts differ");
    }
    const Context& ctx = num.context();
    if (den.is_zero()) throw DivisionByZero("zero denominator");
    if (num.is_zero()) return RationalFunction(ctx);
    if (!den.is_constant()) {
        const Polynomial g = gcd(num, den);
        if (!g.is_constant()) {
            num = exact_div(num, g);
            den = exact_div(den, g);
        }
    }
    const BigRational lc = den.leading_coefficient();
    if (lc != 1) {
        const BigRational inv = BigRational(1) / lc;
        num = num * inv;
        den = den * inv;
    }
    return RationalFunction(std::move(num), std::move(den), true);
}

RationalFunction RationalFunction::operator-() const {
    return RationalFunction(-num_, den_, true);
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    if (context_ptr() != o.context_ptr()) {
        throw ContextMismatch("rational function contexts differ");
    }
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    const Context& ctx = context();
    if (den_ == o.den_) {
        return make(num_ + o.num_, den_);
    }
    // classical reduced addition: only gcd(d1, d2) and gcd(num0, g) are needed
    const Polynomial g = gcd(den_, o.den_);
    if (g.is_constant()) {
        return make(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    const Polynomial d1g = exact_div(den_, g);
    const Polynomial d2g = exact_div(o.den_, g);
    Polynomial num0 = num_ * d2g + o.num_ * d1g;
    if (num0.is_zero()) return RationalFunction(ctx);
    Polynomial den0 = d1g * o.den_;
    const Polynomial h = gcd(num0, g);
    if (!h.is_constant()) {
        num0 = exact_div(num0, h);
        den0 = exact_div(den0, h);
    }
    // normalize leading coefficient only; the fraction is already reduced
    const BigRational lc = den0.leading_coefficient();
    if (lc != 1) {
        const BigRational inv = BigRational(1) / lc;
        num0 = num0 * inv;
        den0 = den0 * inv;
    }
    return RationalFunction(std::move(num0), std::move(den0), true);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
    return *this + (-o);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    if (context_ptr() != o.context_ptr()) {
        throw ContextMismatch("rational function contexts differ");
    }
    if (is_zero() || o.is_zero()) return RationalFunction(context());
    // cross-cancel; both factors are reduced, so the product then is too
    const Polynomial g1 = gcd(num_, o.den_);
    const Polynomial g2 = gcd(o.num_, den_);
    const Polynomial n1 = g1.is_constant() ? num_ : exact_div(num_, g1);
    const Polynomial d2 = g1.is_constant() ? o.den_ : exact_div(o.den_, g1);
    const Polynomial n2 = g2.is_constant() ? o.num_ : exact_div(o.num_, g2);
    const Polynomial d1 = g2.is_constant() ? den_ : exact_div(den_, g2);
    Polynomial num0 = n1 * n2;
    Polynomial den0 = d1 * d2;
    const BigRational lc = den0.leading_coefficient();
    if (lc != 1) {
        const BigRational inv = BigRational(1) / lc;
        num0 = num0 * inv;
        den0 = den0 * inv;
    }
    return RationalFunction(std::move(num0), std::move(den0), true);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    if (o.is_zero()) throw DivisionByZero("division by the zero rational function");
    // the reciprocal of a canonical value is still reduced; only the
    // denominator's leading coefficient needs fixing
    Polynomial rnum = o.den_, rden = o.num_;
    const BigRational lc = rden.leading_coefficient();
    if (lc != 1) {
        const BigRational inv = BigRational(1) / lc;
        rnum = rnum * inv;
        rden = rden * inv;
    }
    return *this * RationalFunction(std::move(rnum), std::move(rden), true);
}

RationalFunction RationalFunction::pow(int n) const {
    const Context& ctx = context();
    if (n == 0) return constant(ctx, BigRational(1));
    const bool invert = n < 0;
    unsigned k = invert ? static_cast<unsigned>(-static_cast<long long>(n))
                        : static_cast<unsigned>(n);
    if (invert && is_zero()) throw DivisionByZero("zero to a negative power");
    // powers of a reduced fraction stay reduced
    Polynomial num0 = num_.pow(k), den0 = den_.pow(k);
    if (invert) std::swap(num0, den0);
    const BigRational lc = den0.leading_coefficient();
    if (lc != 1) {
        const BigRational inv = BigRational(1) / lc;
        num0 = num0 * inv;
        den0 = den0 * inv;
    }
    return RationalFunction(std::move(num0), std::move(den0), true);
}

RationalFunction RationalFunction::derivative(int var) const {
    // quotient rule; reduce through make()
    const Polynomial dn = num_.derivative(var);
    const Polynomial dd = den_.derivative(var);
    if (dd.is_zero()) {
        return make(dn, den_);
    }
    return make(dn * den_ - num_ * dd, den_ * den_);
}

RationalFunction RationalFunction::derivative(std::string_view name) const {
    const int idx = context().index_of(name);
    if (idx < 0) {
        throw ContextMismatch("unknown symbol '" + std::string(name) + "' in context " +
                              context().name());
    }
    return derivative(idx);
}

RationalFunction RationalFunction::substitute(
    const std::map<std::string, RationalFunction>& bindings, const Context& target) const {
    std::map<int, RationalFunction> by_index;
    for (const auto& [name, image] : bindings) {
        const int idx = context().index_of(name);
        if (idx < 0) {
            throw ContextMismatch("binding for '" + name + "' which is not a symbol of context " +
                                  context().name());
        }
        by_index.emplace(idx, image);
    }
    return substitute(by_index, target);
}

RationalFunction RationalFunction::substitute(const std::map<int, RationalFunction>& bindings,
                                              const Context& target) const {
    const Context& src = context();
    const std::size_t n = src.size();

    // resolve an image for every source variable that occurs
    std::vector<const RationalFunction*> image(n, nullptr);
    std::vector<RationalFunction> storage;
    storage.reserve(n);
    for (const auto& [idx, img] : bindings) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= n) {
            throw ContextMismatch("binding index out of range");
        }
        if (&img.context() != &target) {
            throw ContextMismatch("binding image lives outside the target context");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto it = bindings.find(static_cast<int>(i));
        if (it != bindings.end()) {
            image[i] = &it->second;
            continue;
        }
        if (!num_.contains(static_cast<int>(i)) && !den_.contains(static_cast<int>(i))) {
            continue; // unused, no image needed
        }
        const int t = target.index_of(src.symbol(static_cast<int>(i)));
        if (t < 0) {
            throw ContextMismatch("unbound symbol '" + src.symbol(static_cast<int>(i)) +
                                  "' does not exist in context " + target.name());
        }
        storage.push_back(variable(target, t));
        image[i] = &storage.back();
    }

    auto substitute_poly = [&](const Polynomial& p) -> RationalFunction {
        RationalFunction acc(target);
        // per-variable power cache
        std::vector<std::vector<RationalFunction>> powers(n);
        for (const auto& [e, c] : p.terms()) {
            RationalFunction term = constant(target, c);
            for (std::size_t i = 0; i < n; ++i) {
                const std::uint32_t k = e[i];
                if (k == 0) continue;
                auto& tab = powers[i];
                if (tab.empty()) tab.push_back(constant(target, BigRational(1)));
                while (tab.size() <= k) tab.push_back(tab.back() * (*image[i]));
                term = term * tab[k];
            }
            acc = acc + term;
        }
        return acc;
    };

    const RationalFunction num_image = substitute_poly(num_);
    const RationalFunction den_image = substitute_poly(den_);
    if (den_image.is_zero()) {
        throw DivisionByZero("substitution makes the denominator identically zero");
    }
    return num_image / den_image;
}

BigRational RationalFunction::eval(std::span<const BigRational> point) const {
    const BigRational d = den_.eval(point);
    if (d == 0) throw DivisionByZero("evaluation at a pole of " + den_.str());
    return num_.eval(point) / d;
}

double RationalFunction::eval_double(std::span<const double> point) const {
    const double d = den_.eval_double(point);
    if (d == 0.0) throw SingularEvaluation("evaluation at a zero of " + den_.str());
    return num_.eval_double(point) / d;
}

bool RationalFunction::operator==(const RationalFunction& o) const {
    return num_ == o.num_ && den_ == o.den_;
}

std::string RationalFunction::str() const {
    if (den_.is_constant()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RationalFunction operator+(const RationalFunction& a, const BigRational& c) {
    return a + RationalFunction::constant(a.context(), c);
}
RationalFunction operator-(const RationalFunction& a, const BigRational& c) {
    return a + RationalFunction::constant(a.context(), -c);
}
RationalFunction operator*(const RationalFunction& a, const BigRational& c) {
    return a * RationalFunction::constant(a.context(), c);
}
RationalFunction operator*(const BigRational& c, const RationalFunction& a) { return a * c; }
RationalFunction operator*(long c, const RationalFunction& a) { return a * BigRational(c); }
RationalFunction operator+(long c, const RationalFunction& a) { return a + BigRational(c); }
RationalFunction operator-(long c, const RationalFunction& a) {
    return (-a) + BigRational(c);
}

Polynomial reduce_mod_constraint(const Polynomial& p) {
    const Context& ctx = p.context();
    const int a4 = ctx.alpha_index(4);
    if (!p.contains(a4)) return p;
    Polynomial image = Polynomial::constant(ctx, BigRational(1));
    image = image - Polynomial::variable(ctx, ctx.alpha_index(0));
    image = image - Polynomial::variable(ctx, ctx.alpha_index(1));
    image = image - Polynomial::variable(ctx, ctx.alpha_index(2)) * BigRational(2);
    image = image - Polynomial::variable(ctx, ctx.alpha_index(3));
    return p.substitute_var(a4, image);
}

bool equals_mod_constraint(const RationalFunction& a, const RationalFunction& b,
                           bool use_constraint) {
    const RationalFunction d = a - b;
    if (d.is_zero()) return true;
    if (!use_constraint) return false;
    return reduce_mod_constraint(d.num()).is_zero();
}

std::string constraint_residual(const RationalFunction& a, const RationalFunction& b) {
    const RationalFunction d = a - b;
    if (d.is_zero()) return "0";
    const Polynomial rnum = reduce_mod_constraint(d.num());
    if (rnum.is_zero()) return "0";
    return RationalFunction::make(rnum, d.den()).str();
}

} // namespace weylflow
