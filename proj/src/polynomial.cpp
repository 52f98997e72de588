#include "weylflow/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "weylflow/errors.hpp"

namespace weylflow {

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const {
    long da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da < db;
    // lex: first differing exponent decides, larger exponent = larger monomial
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

void Polynomial::check_same_context(const Polynomial& o) const {
    if (ctx_ != o.ctx_) {
        throw ContextMismatch("polynomial contexts differ: " + ctx_->name() + " vs " +
                              o.ctx_->name());
    }
}

Polynomial Polynomial::constant(const Context& ctx, const BigRational& c) {
    Polynomial p(ctx);
    if (c != 0) p.terms_.emplace(Exponents(ctx.size(), 0), c);
    return p;
}

Polynomial Polynomial::variable(const Context& ctx, int var) {
    Exponents e(ctx.size(), 0);
    e[static_cast<std::size_t>(var)] = 1;
    Polynomial p(ctx);
    p.terms_.emplace(std::move(e), BigRational(1));
    return p;
}

Polynomial Polynomial::variable(const Context& ctx, std::string_view name) {
    const int idx = ctx.index_of(name);
    if (idx < 0) throw ContextMismatch("unknown symbol '" + std::string(name) + "' in context " + ctx.name());
    return variable(ctx, idx);
}

Polynomial Polynomial::monomial(const Context& ctx, Exponents e, const BigRational& c) {
    Polynomial p(ctx);
    if (c != 0) p.terms_.emplace(std::move(e), c);
    return p;
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    return total_degree() == 0;
}

BigRational Polynomial::constant_value() const {
    if (terms_.empty()) return BigRational(0);
    return terms_.begin()->second;
}

int Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    const Exponents& lead = leading_exponents();
    long d = 0;
    for (auto e : lead) d += e;
    return static_cast<int>(d);
}

int Polynomial::degree_in(int var) const {
    int d = -1;
    if (terms_.empty()) return -1;
    d = 0;
    for (const auto& [e, c] : terms_) {
        d = std::max(d, static_cast<int>(e[static_cast<std::size_t>(var)]));
    }
    return d;
}

bool Polynomial::contains(int var) const {
    for (const auto& [e, c] : terms_) {
        if (e[static_cast<std::size_t>(var)] > 0) return true;
    }
    return false;
}

void Polynomial::add_term(const Exponents& e, const BigRational& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*ctx_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_same_context(o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    check_same_context(o);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_same_context(o);
    Polynomial r(*ctx_);
    const std::size_t n = ctx_->size();
    Exponents e(n);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::operator*(const BigRational& c) const {
    Polynomial r(*ctx_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

Polynomial Polynomial::pow(unsigned n) const {
    Polynomial r = constant(*ctx_, BigRational(1));
    Polynomial base = *this;
    while (n > 0) {
        if (n & 1u) r = r * base;
        n >>= 1u;
        if (n > 0) base = base * base;
    }
    return r;
}

Polynomial Polynomial::derivative(int var) const {
    Polynomial r(*ctx_);
    const auto v = static_cast<std::size_t>(var);
    for (const auto& [e, c] : terms_) {
        if (e[v] == 0) continue;
        Exponents de = e;
        de[v] -= 1;
        r.add_term(de, c * BigRational(e[v]));
    }
    return r;
}

BigRational Polynomial::eval(std::span<const BigRational> point) const {
    const std::size_t n = ctx_->size();
    // per-variable power tables up to the max exponent seen
    std::vector<std::vector<BigRational>> powers(n);
    for (std::size_t i = 0; i < n; ++i) powers[i].push_back(BigRational(1));
    BigRational acc(0);
    for (const auto& [e, c] : terms_) {
        BigRational term = c;
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t k = e[i];
            if (k == 0) continue;
            auto& tab = powers[i];
            while (tab.size() <= k) tab.push_back(tab.back() * point[i]);
            term *= tab[k];
        }
        acc += term;
    }
    return acc;
}

double Polynomial::eval_double(std::span<const double> point) const {
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = c.convert_to<double>();
        for (std::size_t i = 0; i < e.size(); ++i) {
            std::uint32_t k = e[i];
            if (k == 0) continue;
            double p = point[i], v = 1.0;
            while (k > 0) {
                if (k & 1u) v *= p;
                k >>= 1u;
                if (k > 0) p *= p;
            }
            term *= v;
        }
        acc += term;
    }
    return acc;
}

Polynomial Polynomial::coeff_of(int var, std::uint32_t k) const {
    Polynomial r(*ctx_);
    const auto v = static_cast<std::size_t>(var);
    for (const auto& [e, c] : terms_) {
        if (e[v] != k) continue;
        Exponents stripped = e;
        stripped[v] = 0;
        r.terms_.emplace(std::move(stripped), c);
    }
    return r;
}

Polynomial Polynomial::shift_var(int var, std::uint32_t k) const {
    Polynomial r(*ctx_);
    const auto v = static_cast<std::size_t>(var);
    for (const auto& [e, c] : terms_) {
        Exponents shifted = e;
        shifted[v] += k;
        r.terms_.emplace(std::move(shifted), c);
    }
    return r;
}

Polynomial Polynomial::substitute_var(int var, const Polynomial& image) const {
    check_same_context(image);
    const auto v = static_cast<std::size_t>(var);
    const int dmax = degree_in(var);
    if (dmax <= 0) return *this;
    std::vector<Polynomial> img_pow;
    img_pow.reserve(static_cast<std::size_t>(dmax) + 1);
    img_pow.push_back(constant(*ctx_, BigRational(1)));
    for (int k = 1; k <= dmax; ++k) img_pow.push_back(img_pow.back() * image);
    Polynomial r(*ctx_);
    for (const auto& [e, c] : terms_) {
        const std::uint32_t k = e[v];
        Exponents stripped = e;
        stripped[v] = 0;
        Polynomial part = monomial(*ctx_, std::move(stripped), c);
        if (k > 0) part = part * img_pow[k];
        r = r + part;
    }
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    return ctx_ == o.ctx_ && terms_ == o.terms_;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        const bool negative = c < 0;
        BigRational mag = negative ? BigRational(-c) : c;
        if (first) {
            if (negative) os << "-";
            first = false;
        } else {
            os << (negative ? " - " : " + ");
        }
        bool any_var = false;
        std::ostringstream vars;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (any_var) vars << "*";
            vars << ctx_->symbol(static_cast<int>(i));
            if (e[i] > 1) vars << "^" << e[i];
            any_var = true;
        }
        if (!any_var) {
            os << mag;
        } else if (mag == 1) {
            os << vars.str();
        } else {
            os << mag << "*" << vars.str();
        }
    }
    return os.str();
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& a, const Polynomial& b) {
    a.check_same_context(b);
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    Polynomial q(a.context());
    Polynomial r = a;
    const std::size_t n = a.context().size();
    const Exponents& lb = b.leading_exponents();
    const BigRational& cb = b.leading_coefficient();
    while (!r.is_zero()) {
        const Exponents& lr = r.leading_exponents();
        Exponents qe(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (lr[i] < lb[i]) return std::nullopt;
            qe[i] = lr[i] - lb[i];
        }
        const BigRational qc = r.leading_coefficient() / cb;
        Polynomial qm = monomial(a.context(), qe, qc);
        q = q + qm;
        r = r - qm * b;
    }
    return q;
}

} // namespace weylflow
