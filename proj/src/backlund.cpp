#include "weylflow/backlund.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "weylflow/errors.hpp"
#include "weylflow/parser.hpp"

namespace weylflow {

namespace {

constexpr std::array<int, 5> kConstraintWeights{1, 1, 2, 1, 1};

// Dynkin adjacency: node 2 is the hub, the outer nodes touch only node 2.
bool adjacent(int i, int j) { return (i == 2) != (j == 2); }

std::string sanitize_word(std::string_view word) {
    std::string id(word);
    std::replace(id.begin(), id.end(), ' ', '-');
    return id;
}

std::string residual_string(const RationalFunction& lhs, const RationalFunction& rhs,
                            bool use_constraint) {
    if (use_constraint) return constraint_residual(lhs, rhs);
    return (lhs - rhs).str();
}

RationalFunction alpha_symbol(const Context& ctx, std::size_t k) {
    return RationalFunction::variable(ctx, ctx.alpha_index(k));
}

// Exact rational sampler: numerators in [-10, 10], denominators in [1, 10].
class ExactSampler {
public:
    explicit ExactSampler(std::uint64_t seed) : rng_(seed) {}

    BigRational next() {
        const long num = static_cast<long>(rng_() % 21) - 10;
        const long den = 1 + static_cast<long>(rng_() % 10);
        return BigRational(num, den);
    }

private:
    std::mt19937_64 rng_;
};

struct SamplePoint {
    std::vector<BigRational> state;
    ParameterVector alpha;
    BigRational time;
};

SamplePoint draw_point(ExactSampler& sampler, const Context& ctx) {
    SamplePoint p;
    p.state.resize(ctx.phase_count());
    for (auto& s : p.state) s = sampler.next();
    for (auto& a : p.alpha) a = sampler.next();
    p.time = sampler.next();
    return p;
}

bool same_point(const SamplePoint& a, const ExactPointImage& b) {
    if (a.state != b.state) return false;
    if (a.alpha != b.alpha) return false;
    return a.time == b.time;
}

// Applies the word pointwise, rightmost token first.
ExactPointImage apply_word_point(const std::vector<RationalMap>& maps, const SamplePoint& p) {
    ExactPointImage cur{p.state, p.alpha, p.time};
    for (auto it = maps.rbegin(); it != maps.rend(); ++it) {
        cur = apply_map_point(*it, cur.state, cur.alpha, cur.time);
    }
    return cur;
}

} // namespace

const Context& context_of(Variant v) {
    return v == Variant::autonomous ? Context::autonomous() : Context::reduced();
}

std::string_view variant_system_name(Variant v) {
    return v == Variant::autonomous ? "autonomous" : "piii";
}

ParamAction ParamAction::identity() {
    ParamAction a;
    for (std::size_t i = 0; i < 5; ++i) a.matrix[i][i] = BigRational(1);
    return a;
}

ParameterVector ParamAction::apply(const ParameterVector& a) const {
    ParameterVector out;
    for (std::size_t i = 0; i < 5; ++i) {
        BigRational acc = shift[i];
        for (std::size_t j = 0; j < 5; ++j) acc += matrix[i][j] * a[j];
        out[i] = acc;
    }
    return out;
}

std::array<double, 5> ParamAction::apply(const std::array<double, 5>& a) const {
    std::array<double, 5> out;
    for (std::size_t i = 0; i < 5; ++i) {
        double acc = static_cast<double>(shift[i]);
        for (std::size_t j = 0; j < 5; ++j) acc += static_cast<double>(matrix[i][j]) * a[j];
        out[i] = acc;
    }
    return out;
}

ParamAction ParamAction::after(const ParamAction& inner) const {
    ParamAction out;
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            BigRational acc(0);
            for (std::size_t k = 0; k < 5; ++k) acc += matrix[i][k] * inner.matrix[k][j];
            out.matrix[i][j] = acc;
        }
        BigRational acc = shift[i];
        for (std::size_t k = 0; k < 5; ++k) acc += matrix[i][k] * inner.shift[k];
        out.shift[i] = acc;
    }
    return out;
}

bool ParamAction::is_identity() const { return *this == identity(); }

bool ParamAction::preserves_constraint() const {
    // Row vector w^T M must be proportional to w^T, and the proportionality
    // constant c must satisfy c + w^T·shift = 1.
    std::array<BigRational, 5> row;
    for (std::size_t j = 0; j < 5; ++j) {
        BigRational acc(0);
        for (std::size_t i = 0; i < 5; ++i)
            acc += BigRational(kConstraintWeights[i]) * matrix[i][j];
        row[j] = acc;
    }
    const BigRational c = row[0] / kConstraintWeights[0];
    for (std::size_t j = 0; j < 5; ++j) {
        if (row[j] != c * BigRational(kConstraintWeights[j])) return false;
    }
    BigRational wb(0);
    for (std::size_t i = 0; i < 5; ++i) wb += BigRational(kConstraintWeights[i]) * shift[i];
    return c + wb == BigRational(1);
}

Variant RationalMap::variant() const {
    return ctx == &Context::autonomous() ? Variant::autonomous : Variant::reduced;
}

std::map<int, RationalFunction> RationalMap::bindings() const {
    std::map<int, RationalFunction> b;
    for (std::size_t i = 0; i < images.size(); ++i) b.emplace(static_cast<int>(i), images[i]);
    for (std::size_t k = 0; k < 5; ++k) {
        RationalFunction img = RationalFunction::constant(*ctx, params.shift[k]);
        for (std::size_t l = 0; l < 5; ++l) {
            if (params.matrix[k][l] == 0) continue;
            img = img + alpha_symbol(*ctx, l) * params.matrix[k][l];
        }
        b.emplace(ctx->alpha_index(k), img);
    }
    b.emplace(ctx->time_index(),
              RationalFunction::variable(*ctx, ctx->time_index()) * BigRational(time_sign));
    return b;
}

bool RationalMap::is_identity() const {
    if (time_sign != 1 || !params.is_identity()) return false;
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (images[i] != RationalFunction::variable(*ctx, static_cast<int>(i))) return false;
    }
    return true;
}

RationalMap identity_map(Variant v) {
    const Context& ctx = context_of(v);
    RationalMap m{"1", &ctx, {}, ParamAction::identity(), 1};
    for (std::size_t i = 0; i < ctx.phase_count(); ++i)
        m.images.push_back(RationalFunction::variable(ctx, static_cast<int>(i)));
    return m;
}

RationalMap build_s(int i, Variant v) {
    if (i < 0 || i > 4) throw DomainError("generator index " + std::to_string(i));
    RationalMap m = identity_map(v);
    m.name = "s" + std::to_string(i);
    const Context& ctx = m.context();

    // Reflection on parameters: a_i -> -a_i, neighbors gain a_i.
    m.params.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = BigRational(-1);
    for (int j = 0; j < 5; ++j) {
        if (adjacent(i, j))
            m.params.matrix[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                BigRational(1);
    }

    auto img = [&](const char* name, const char* text) {
        m.images[static_cast<std::size_t>(ctx.index_of(name))] = parse_expression(text, ctx);
    };
    if (v == Variant::autonomous) {
        switch (i) {
            case 0:
                img("f2", "f2 + a0*g2/f0");
                img("g1", "g1 + a0/f0");
                break;
            case 1:
                img("f2", "f2 + a1*g2/f1");
                img("g1", "g1 + a1/f1");
                break;
            case 2:
                img("f0", "f0 - a2*g2/f2");
                img("f1", "f1 - a2*g2/f2");
                img("f3", "f3 - a2*g1/f2");
                img("f4", "f4 - a2*g1/f2");
                break;
            case 3:
                img("f2", "f2 + a3*g1/f3");
                img("g2", "g2 + a3/f3");
                break;
            case 4:
                img("f2", "f2 + a4*g1/f4");
                img("g2", "g2 + a4/f4");
                break;
        }
    } else {
        switch (i) {
            case 0: img("x", "x + a0/(y - 1)"); break;
            case 1: img("x", "x + a1/y"); break;
            case 2:
                img("y", "y - a2*z/(x*z + T)");
                img("w", "w - a2*x/(x*z + T)");
                break;
            case 3: img("z", "z + a3/(w - 1)"); break;
            case 4: img("z", "z + a4/w"); break;
        }
    }
    return m;
}

RationalMap build_pi(int j) {
    if (j < 1 || j > 3) throw DomainError("automorphism index " + std::to_string(j));
    RationalMap m = identity_map(Variant::reduced);
    m.name = "pi" + std::to_string(j);
    const Context& ctx = m.context();

    auto img = [&](const char* name, const char* text) {
        m.images[static_cast<std::size_t>(ctx.index_of(name))] = parse_expression(text, ctx);
    };
    auto permute_alpha = [&](std::array<std::size_t, 5> sigma) {
        // alpha'_k = alpha_{sigma(k)}.
        for (auto& row : m.params.matrix) row.fill(BigRational(0));
        for (std::size_t k = 0; k < 5; ++k) m.params.matrix[k][sigma[k]] = BigRational(1);
    };
    switch (j) {
        case 1:
            img("x", "-x");
            img("y", "1 - y");
            m.time_sign = -1;
            permute_alpha({1, 0, 2, 3, 4});
            break;
        case 2:
            img("z", "-z");
            img("w", "1 - w");
            m.time_sign = -1;
            permute_alpha({0, 1, 2, 4, 3});
            break;
        case 3:
            img("x", "z");
            img("y", "w");
            img("z", "x");
            img("w", "y");
            permute_alpha({3, 4, 2, 0, 1});
            break;
    }
    return m;
}

RationalMap compose(const RationalMap& a, const RationalMap& b) {
    if (a.ctx != b.ctx) throw ContextMismatch("compose: maps on different contexts");
    const Context& ctx = a.context();
    RationalMap out{a.name + " " + b.name, &ctx, {}, a.params.after(b.params),
                    a.time_sign * b.time_sign};
    const auto inner = b.bindings();
    out.images.reserve(a.images.size());
    for (const auto& img : a.images) {
        try {
            out.images.push_back(img.substitute(inner, ctx));
        } catch (const DivisionByZero&) {
            throw DegenerateComposition("compose '" + out.name +
                                        "': an image denominator vanishes identically");
        }
    }
    return out;
}

std::vector<std::string> tokenize_word(std::string_view word) {
    std::vector<std::string> tokens;
    std::istringstream in{std::string(word)};
    std::string tok;
    while (in >> tok) {
        const bool is_s = tok.size() == 2 && tok[0] == 's' && tok[1] >= '0' && tok[1] <= '4';
        const bool is_pi = tok.size() == 3 && tok.compare(0, 2, "pi") == 0 && tok[2] >= '1' &&
                           tok[2] <= '3';
        if (!is_s && !is_pi) throw ParseError("unknown generator token '" + tok + "'");
        tokens.push_back(tok);
    }
    if (tokens.empty()) throw ParseError("empty word");
    return tokens;
}

RationalMap build_generator(const std::string& token, Variant v) {
    if (token[0] == 's') return build_s(token[1] - '0', v);
    if (v != Variant::reduced)
        throw DomainError("token '" + token + "' exists only for the reduced variant");
    return build_pi(token[2] - '0');
}

RationalMap build_word(std::string_view word, Variant v) {
    const auto tokens = tokenize_word(word);
    RationalMap acc = build_generator(tokens.back(), v);
    for (auto it = tokens.rbegin() + 1; it != tokens.rend(); ++it) {
        acc = compose(build_generator(*it, v), acc);
    }
    acc.name = std::string(word);
    return acc;
}

ExactPointImage apply_map_point(const RationalMap& m, std::span<const BigRational> state,
                                const ParameterVector& alpha, const BigRational& time) {
    const Context& ctx = m.context();
    if (state.size() != ctx.phase_count())
        throw DomainError("point dimension does not match map context");
    std::vector<BigRational> point(ctx.size(), BigRational(0));
    for (std::size_t i = 0; i < state.size(); ++i) point[i] = state[i];
    point[static_cast<std::size_t>(ctx.time_index())] = time;

    // Specialize the parameters symbolically first, so that offsets whose
    // coefficient vanishes cancel exactly (s0 at y = 1 with a0 = 0 is the
    // identity, not a pole).
    std::map<int, RationalFunction> spec;
    for (std::size_t k = 0; k < 5; ++k)
        spec.emplace(ctx.alpha_index(k), RationalFunction::constant(ctx, alpha[k]));

    ExactPointImage out;
    out.state.reserve(m.images.size());
    for (const auto& img : m.images) {
        const RationalFunction inst = img.substitute(spec, ctx);
        const BigRational den = inst.den().eval(point);
        if (den == 0) throw PoleHit(m.name, inst.den().str());
        out.state.push_back(inst.num().eval(point) / den);
    }
    out.alpha = m.params.apply(alpha);
    out.time = BigRational(m.time_sign) * time;
    return out;
}

FloatPointImage apply_map_point(const RationalMap& m, std::span<const double> state,
                                const std::array<double, 5>& alpha, double time,
                                double pole_tolerance) {
    const Context& ctx = m.context();
    if (state.size() != ctx.phase_count())
        throw DomainError("point dimension does not match map context");
    std::vector<double> point(ctx.size(), 0.0);
    for (std::size_t i = 0; i < state.size(); ++i) point[i] = state[i];
    point[static_cast<std::size_t>(ctx.time_index())] = time;
    for (std::size_t k = 0; k < 5; ++k)
        point[static_cast<std::size_t>(ctx.alpha_index(k))] = alpha[k];

    FloatPointImage out;
    out.state.reserve(m.images.size());
    for (const auto& img : m.images) {
        const double den = img.den().eval_double(point);
        if (std::abs(den) <= pole_tolerance) throw PoleHit(m.name, img.den().str());
        out.state.push_back(img.num().eval_double(point) / den);
    }
    out.alpha = m.params.apply(alpha);
    out.time = m.time_sign * time;
    return out;
}

VerificationReport verify_invariance(const SystemDefinition& sys, const RationalMap& m,
                                     bool use_constraint) {
    if (sys.ctx != m.ctx) throw ContextMismatch("verify_invariance: context mismatch");
    const Context& ctx = sys.context();
    const int t = ctx.time_index();
    const auto bound = m.bindings();

    VerificationReport report;
    report.check_id = "invariance." + sys.name + "." + sanitize_word(m.name);

    for (std::size_t j = 0; j < sys.dimension(); ++j) {
        const RationalFunction& phi = m.images[j];
        RationalFunction lhs = phi.derivative(t);
        for (std::size_t i = 0; i < sys.dimension(); ++i) {
            lhs = lhs + phi.derivative(static_cast<int>(i)) * sys.components[i];
        }
        if (m.time_sign < 0) lhs = -lhs;
        const RationalFunction rhs = sys.components[j].substitute(bound, ctx);
        const bool ok = equals_mod_constraint(lhs, rhs, use_constraint);
        report.add(sys.phase_symbol(j), residual_string(lhs, rhs, use_constraint), ok);
    }
    return report;
}

std::vector<VerificationReport> verify_first_integrals(const SystemDefinition& sys,
                                                       bool use_constraint) {
    const Context& ctx = sys.context();
    auto v = [&](const char* n) { return RationalFunction::variable(ctx, n); };
    auto lie = [&](const RationalFunction& q) {
        RationalFunction acc(ctx);
        for (std::size_t i = 0; i < sys.dimension(); ++i)
            acc = acc + q.derivative(static_cast<int>(i)) * sys.components[i];
        return acc;
    };
    const RationalFunction zero(ctx);

    std::vector<VerificationReport> out;
    {
        VerificationReport r;
        r.check_id = "integrals.f0-f1";
        const auto lhs = lie(v("f0") - v("f1"));
        r.add("d(f0 - f1)/dt = 0", residual_string(lhs, zero, use_constraint),
              equals_mod_constraint(lhs, zero, use_constraint));
        out.push_back(std::move(r));
    }
    {
        VerificationReport r;
        r.check_id = "integrals.f3-f4";
        const auto lhs = lie(v("f3") - v("f4"));
        r.add("d(f3 - f4)/dt = 0", residual_string(lhs, zero, use_constraint),
              equals_mod_constraint(lhs, zero, use_constraint));
        out.push_back(std::move(r));
    }
    {
        VerificationReport r;
        r.check_id = "integrals.f2-g1g2";
        const auto q = v("f2") - v("g1") * v("g2");
        const auto lhs = lie(q);
        r.add("d(f2 - g1*g2)/dt = f2 - g1*g2", residual_string(lhs, q, use_constraint),
              equals_mod_constraint(lhs, q, use_constraint));
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<VerificationReport> verify_invariant_divisors(const SystemDefinition& sys) {
    const Context& ctx = sys.context();
    std::vector<VerificationReport> out;
    for (int i = 0; i < 5; ++i) {
        const std::string fi = "f" + std::to_string(i);
        const std::string ai = "a" + std::to_string(i);
        VerificationReport r;
        r.check_id = "divisors." + fi;

        const Polynomial rhs = sys.components[static_cast<std::size_t>(ctx.index_of(fi))].num();
        const Polynomial divisor = Polynomial::variable(ctx, fi);
        const Polynomial at_zero =
            rhs.substitute_var(ctx.alpha_index(static_cast<std::size_t>(i)), Polynomial(ctx));

        const auto quotient = Polynomial::divide_exact(at_zero, divisor);
        r.add(fi + " divides d" + fi + "/dt at " + ai + " = 0",
              quotient ? "0" : at_zero.str(), quotient.has_value());

        const auto generic = Polynomial::divide_exact(rhs, divisor);
        r.add("division fails with symbolic " + ai, generic ? "unexpected exact quotient" : "0",
              !generic.has_value());
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<VerificationReport> verify_hamiltonian_form() {
    const auto sys = build_piii_system();
    const auto H = build_hamiltonian().H;
    const Context& ctx = sys.context();

    struct Row {
        const char* var;      // equation checked
        const char* partial;  // differentiation variable
        int sign;
    };
    const Row rows[] = {{"x", "y", 1}, {"y", "x", -1}, {"z", "w", 1}, {"w", "z", -1}};

    std::vector<VerificationReport> out;
    for (const Row& row : rows) {
        VerificationReport r;
        r.check_id = std::string("hamiltonian.") + row.var;
        const auto& component = sys.components[static_cast<std::size_t>(ctx.index_of(row.var))];
        const auto partial = H.derivative(row.partial) * BigRational(row.sign);
        const std::string label = std::string("d") + row.var + "/dT = " +
                                  (row.sign > 0 ? "" : "-") + "dH/d" + row.partial;
        r.add(label, (component - partial).str(), component == partial);
        r.add("opposite sign convention rejected", component == -partial ? "sign flip accepted" : "0",
              component != -partial);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<VerificationReport> verify_reduction() {
    const auto asys = build_autonomous_system();
    const auto psys = build_piii_system();
    const Context& A = asys.context();
    const Context& R = psys.context();
    auto rv = [&](const char* n) { return RationalFunction::variable(R, n); };
    const auto T = rv("T");

    const std::map<std::string, RationalFunction> sub{
        {"f0", rv("y") - RationalFunction::constant(R, BigRational(1))},
        {"f1", rv("y")},
        {"f2", rv("x") * rv("z") + T},
        {"f3", rv("w") - RationalFunction::constant(R, BigRational(1))},
        {"f4", rv("w")},
        {"g1", rv("x")},
        {"g2", rv("z")},
    };
    auto pull = [&](const char* name) {
        return asys.components[static_cast<std::size_t>(A.index_of(name))].substitute(sub, R);
    };
    auto piii = [&](const char* name) {
        return psys.components[static_cast<std::size_t>(R.index_of(name))];
    };

    std::vector<VerificationReport> out;
    const struct {
        const char* reduced;
        const char* autonomous;
    } pairs[] = {{"x", "g1"}, {"y", "f1"}, {"z", "g2"}, {"w", "f4"}};
    for (const auto& p : pairs) {
        VerificationReport r;
        r.check_id = std::string("reduction.") + p.reduced;
        const auto lhs = pull(p.autonomous);
        const auto rhs = T * piii(p.reduced);
        r.add(std::string("substituted d") + p.autonomous + "/dt = T*d" + p.reduced + "/dT",
              constraint_residual(lhs, rhs), equals_mod_constraint(lhs, rhs));
        out.push_back(std::move(r));
    }
    {
        VerificationReport r;
        r.check_id = "reduction.f2";
        // d(xz+T)/dT along the piii flow, times T.
        const auto lhs = pull("f2");
        const auto rhs =
            T * (piii("x") * rv("z") + rv("x") * piii("z") +
                 RationalFunction::constant(R, BigRational(1)));
        r.add("substituted df2/dt matches the flow derivative of x*z + T",
              constraint_residual(lhs, rhs), equals_mod_constraint(lhs, rhs));
        r.add("f0 and f1 equations pull back identically",
              residual_string(pull("f0"), pull("f1"), false), pull("f0") == pull("f1"));
        r.add("f3 and f4 equations pull back identically",
              residual_string(pull("f3"), pull("f4"), false), pull("f3") == pull("f4"));
        out.push_back(std::move(r));
    }
    return out;
}

VerificationReport verify_relation(std::string_view word, Variant v, bool symbolic,
                                   int n_samples, std::uint64_t seed) {
    const auto tokens = tokenize_word(word);
    std::vector<RationalMap> maps;
    maps.reserve(tokens.size());
    for (const auto& tok : tokens) maps.push_back(build_generator(tok, v));

    VerificationReport report;
    report.check_id = "relations." + std::string(variant_system_name(v)) + "." +
                      sanitize_word(word);

    ParamAction action = ParamAction::identity();
    for (auto it = maps.rbegin(); it != maps.rend(); ++it) action = it->params.after(action);
    report.add("composed parameter action is the identity",
               action.is_identity() ? "0" : "composite action differs", action.is_identity());

    if (symbolic) {
        report.mode = "symbolic";
        RationalMap composed = maps.back();
        for (auto it = maps.rbegin() + 1; it != maps.rend(); ++it)
            composed = compose(*it, composed);
        const Context& ctx = composed.context();
        bool all_fixed = true;
        for (std::size_t i = 0; i < composed.images.size(); ++i) {
            const auto diff = composed.images[i] -
                              RationalFunction::variable(ctx, static_cast<int>(i));
            if (!diff.is_zero()) {
                report.add("composite fixes " + ctx.symbol(static_cast<int>(i)), diff.str(),
                           false);
                all_fixed = false;
            }
        }
        if (all_fixed)
            report.add("composite is the identity map", composed.time_sign == 1 ? "0" : "time sign flips",
                       composed.time_sign == 1);
        return report;
    }

    report.mode = "sampled";
    report.seed = seed;
    const Context& ctx = context_of(v);
    ExactSampler sampler(seed);
    int accepted = 0;
    long draws = 0;
    const long max_draws = 100L * n_samples;
    while (accepted < n_samples) {
        if (++draws > max_draws)
            throw ExhaustedResampling("word '" + std::string(word) + "': no pole-free sample in " +
                                      std::to_string(max_draws) + " draws");
        SamplePoint p = draw_point(sampler, ctx);
        try {
            const auto image = apply_word_point(maps, p);
            if (!same_point(p, image)) {
                std::string detail = "sample " + std::to_string(accepted) + " not fixed";
                for (std::size_t i = 0; i < p.state.size(); ++i) {
                    if (image.state[i] != p.state[i]) {
                        detail += ": " + ctx.symbol(static_cast<int>(i)) + "' - " +
                                  ctx.symbol(static_cast<int>(i)) + " = " +
                                  to_string(image.state[i] - p.state[i]);
                        break;
                    }
                }
                report.add("pointwise identity", detail, false);
                return report;
            }
            ++accepted;
        } catch (const PoleHit&) {
            continue;
        }
    }
    report.add("pointwise identity",
               std::to_string(accepted) + "/" + std::to_string(n_samples) + " samples fixed",
               true);
    return report;
}

VerificationReport verify_diagram_automorphism(int j, int n_samples, std::uint64_t seed) {
    if (j < 1 || j > 3) throw DomainError("automorphism index " + std::to_string(j));
    static const std::array<std::array<int, 5>, 3> sigma{{{1, 0, 2, 3, 4},
                                                          {0, 1, 2, 4, 3},
                                                          {3, 4, 2, 0, 1}}};
    const auto& perm = sigma[static_cast<std::size_t>(j - 1)];
    const Context& ctx = Context::reduced();
    const RationalMap pi = build_pi(j);

    VerificationReport report;
    report.check_id = "automorphism.pi" + std::to_string(j);
    report.mode = "sampled";
    report.seed = seed;

    ExactSampler sampler(seed);
    for (int i = 0; i < 5; ++i) {
        const RationalMap si = build_s(i, Variant::reduced);
        const RationalMap target = build_s(perm[static_cast<std::size_t>(i)], Variant::reduced);
        const std::vector<RationalMap> conjugation{pi, si, pi};
        const std::string label = "pi" + std::to_string(j) + " s" + std::to_string(i) + " pi" +
                                  std::to_string(j) + " = " + target.name;

        const ParamAction lhs_action =
            pi.params.after(si.params.after(pi.params.after(ParamAction::identity())));
        if (!(lhs_action == target.params)) {
            report.add(label, "parameter actions differ", false);
            continue;
        }

        int accepted = 0;
        long draws = 0;
        bool ok = true;
        std::string residual = "0";
        while (accepted < n_samples) {
            if (++draws > 100L * n_samples)
                throw ExhaustedResampling("conjugation '" + label + "': no pole-free sample");
            SamplePoint p = draw_point(sampler, ctx);
            try {
                const auto lhs = apply_word_point(conjugation, p);
                const auto rhs = apply_map_point(target, p.state, p.alpha, p.time);
                if (lhs.state != rhs.state || lhs.alpha != rhs.alpha || lhs.time != rhs.time) {
                    ok = false;
                    residual = "sample " + std::to_string(accepted) + " differs";
                    break;
                }
                ++accepted;
            } catch (const PoleHit&) {
                continue;
            }
        }
        if (ok) residual = std::to_string(accepted) + "/" + std::to_string(n_samples) + " samples agree";
        report.add(label, residual, ok);
    }
    return report;
}

std::vector<VerificationReport> invariance_suite(bool use_constraint) {
    const auto asys = build_autonomous_system();
    const auto psys = build_piii_system();
    std::vector<VerificationReport> out;
    for (int i = 0; i < 5; ++i)
        out.push_back(verify_invariance(asys, build_s(i, Variant::autonomous), use_constraint));
    for (int i = 0; i < 5; ++i)
        out.push_back(verify_invariance(psys, build_s(i, Variant::reduced), use_constraint));
    for (int j = 1; j <= 3; ++j)
        out.push_back(verify_invariance(psys, build_pi(j), use_constraint));
    return out;
}

std::vector<VerificationReport> integrals_suite(bool use_constraint) {
    return verify_first_integrals(build_autonomous_system(), use_constraint);
}

std::vector<VerificationReport> divisors_suite() {
    return verify_invariant_divisors(build_autonomous_system());
}

std::vector<VerificationReport> relations_suite(int n_samples, std::uint64_t seed) {
    std::vector<VerificationReport> out;
    for (Variant v : {Variant::autonomous, Variant::reduced}) {
        for (int i = 0; i < 5; ++i) {
            const std::string s = "s" + std::to_string(i);
            out.push_back(verify_relation(s + " " + s, v, /*symbolic=*/true, n_samples, seed));
        }
        const std::pair<int, int> commuting[] = {{0, 1}, {0, 3}, {0, 4}, {1, 3}, {1, 4}, {3, 4}};
        for (const auto& [a, b] : commuting) {
            const std::string sa = "s" + std::to_string(a);
            const std::string sb = "s" + std::to_string(b);
            out.push_back(verify_relation(sa + " " + sb + " " + sa + " " + sb, v,
                                          /*symbolic=*/false, n_samples, seed));
        }
        for (int a : {0, 1, 3, 4}) {
            const std::string sa = "s" + std::to_string(a);
            const std::string word = sa + " s2 " + sa + " s2 " + sa + " s2";
            out.push_back(verify_relation(word, v, /*symbolic=*/false, n_samples, seed));
        }
    }
    return out;
}

std::vector<VerificationReport> automorphism_suite(int n_samples, std::uint64_t seed) {
    std::vector<VerificationReport> out;
    for (int j = 1; j <= 3; ++j) out.push_back(verify_diagram_automorphism(j, n_samples, seed));
    return out;
}

} // namespace weylflow
