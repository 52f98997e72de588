#include "weylflow/model.hpp"

#include "weylflow/errors.hpp"
#include "weylflow/parser.hpp"

namespace weylflow {

BigRational alpha_weighted_sum(const ParameterVector& a) {
    return a[0] + a[1] + BigRational(2) * a[2] + a[3] + a[4];
}

bool is_normalized(const ParameterVector& a) {
    return alpha_weighted_sum(a) == BigRational(1);
}

std::optional<ParameterVector> parse_parameter_vector(std::string_view csv) {
    ParameterVector out;
    std::size_t field = 0;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = csv.find(',', start);
        const std::string token(csv.substr(start, comma == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : comma - start));
        auto q = parse_rational(token);
        if (!q || field >= out.size()) return std::nullopt;
        out[field++] = *q;
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (field != out.size()) return std::nullopt;
    return out;
}

std::array<double, 5> to_double(const ParameterVector& a) {
    std::array<double, 5> out;
    for (std::size_t i = 0; i < 5; ++i) out[i] = static_cast<double>(a[i]);
    return out;
}

SystemDefinition build_autonomous_system() {
    const Context& ctx = Context::autonomous();
    SystemDefinition sys{"autonomous", &ctx, {}, true};
    static const char* const rhs[] = {
        "-(2*f1*g1 + a1)*f0 - a0*f1",
        "-(2*f0*g1 + a0)*f1 - a1*f0",
        "((f0 + f1)*g1 + (f3 + f4)*g2 + 1)*f2 - 2*a2*g1*g2",
        "-(2*f4*g2 + a4)*f3 - a3*f4",
        "-(2*f3*g2 + a3)*f4 - a4*f3",
        "(f0 + f1)*g1^2 - ((f3 + f4)*g2 - a0 - a1)*g1 + (f3 + f4)*f2",
        "(f3 + f4)*g2^2 - ((f0 + f1)*g1 - a3 - a4)*g2 + (f0 + f1)*f2",
    };
    for (const char* text : rhs) sys.components.push_back(parse_expression(text, ctx));
    return sys;
}

SystemDefinition build_piii_system() {
    const Context& ctx = Context::reduced();
    SystemDefinition sys{"piii", &ctx, {}, false};
    static const char* const rhs[] = {
        "(2*x^2*y - x^2 + (a0 + a1)*x)/T - 1 + 2*w",
        "(-2*x*y^2 + 2*x*y - (a0 + a1)*y + a1)/T",
        "(2*z^2*w - z^2 + (a3 + a4)*z)/T - 1 + 2*y",
        "(-2*z*w^2 + 2*z*w - (a3 + a4)*w + a4)/T",
    };
    for (const char* text : rhs) sys.components.push_back(parse_expression(text, ctx));
    return sys;
}

Hamiltonian build_hamiltonian() {
    const Context& ctx = Context::reduced();
    return Hamiltonian{parse_expression(
        "(x^2*y^2 - x^2*y + (a0 + a1)*x*y - a1*x)/T - y"
        " + (z^2*w^2 - z^2*w + (a3 + a4)*z*w - a4*z)/T - w + 2*y*w",
        ctx)};
}

std::vector<double> eval_field(const SystemDefinition& sys, std::span<const double> state,
                               double time, const std::array<double, 5>& alpha) {
    const Context& ctx = sys.context();
    if (state.size() != sys.dimension()) {
        throw DomainError("state dimension " + std::to_string(state.size()) +
                          " does not match system " + sys.name);
    }
    std::vector<double> point(ctx.size(), 0.0);
    for (std::size_t i = 0; i < state.size(); ++i) point[i] = state[i];
    point[static_cast<std::size_t>(ctx.time_index())] = time;
    for (std::size_t k = 0; k < 5; ++k)
        point[static_cast<std::size_t>(ctx.alpha_index(k))] = alpha[k];

    std::vector<double> out;
    out.reserve(sys.components.size());
    for (const auto& c : sys.components) out.push_back(c.eval_double(point));
    return out;
}

} // namespace weylflow
