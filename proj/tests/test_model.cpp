#include <doctest.h>

#include <cmath>
#include <random>

#include "weylflow/errors.hpp"
#include "weylflow/model.hpp"

using namespace weylflow;

namespace {

std::vector<BigRational> exact_point(const SystemDefinition& sys,
                                     const std::vector<BigRational>& state,
                                     const BigRational& time, const ParameterVector& alpha) {
    const Context& ctx = sys.context();
    std::vector<BigRational> point(ctx.size(), BigRational(0));
    for (std::size_t i = 0; i < state.size(); ++i) point[i] = state[i];
    point[static_cast<std::size_t>(ctx.time_index())] = time;
    for (std::size_t k = 0; k < 5; ++k)
        point[static_cast<std::size_t>(ctx.alpha_index(k))] = alpha[k];
    return point;
}

ParameterVector sixths() {
    return {BigRational(1, 6), BigRational(1, 6), BigRational(1, 6), BigRational(1, 6),
            BigRational(1, 6)};
}

} // namespace

TEST_CASE("parameter vectors parse and normalize") {
    auto a = parse_parameter_vector("1/6,1/6,1/6,1/6,1/6");
    REQUIRE(a.has_value());
    CHECK(alpha_weighted_sum(*a) == BigRational(1));
    CHECK(is_normalized(*a));

    auto b = parse_parameter_vector("1,0,0,0,0");
    REQUIRE(b.has_value());
    CHECK(is_normalized(*b));

    auto c = parse_parameter_vector("1/2,0,0,0,0");
    REQUIRE(c.has_value());
    CHECK_FALSE(is_normalized(*c));

    CHECK_FALSE(parse_parameter_vector("1/6,1/6").has_value());
    CHECK_FALSE(parse_parameter_vector("1/6,1/6,1/6,1/6,1/6,1/6").has_value());
    CHECK_FALSE(parse_parameter_vector("1/6,x,1/6,1/6,1/6").has_value());
    CHECK_FALSE(parse_parameter_vector("").has_value());
}

TEST_CASE("autonomous system components") {
    auto sys = build_autonomous_system();
    REQUIRE(sys.dimension() == 7);
    CHECK(sys.is_autonomous);
    CHECK(sys.name == "autonomous");

    // All components are polynomial (denominator 1).
    for (const auto& c : sys.components) CHECK(c.is_polynomial());
    // None mentions the time symbol.
    const int t = sys.context().time_index();
    for (const auto& c : sys.components) CHECK_FALSE(c.num().contains(t));

    // Independent reconstruction of the first component.
    const auto& A = Context::autonomous();
    auto v = [&](const char* n) { return RationalFunction::variable(A, n); };
    CHECK(sys.components[0] ==
          -(2 * v("f1") * v("g1") + v("a1")) * v("f0") - v("a0") * v("f1"));

    // Frozen values at the all-ones point with alpha = (1/6,...,1/6).
    std::vector<BigRational> ones(7, BigRational(1));
    auto point = exact_point(sys, ones, BigRational(0), sixths());
    const BigRational expected[] = {
        BigRational(-7, 3), BigRational(-7, 3), BigRational(14, 3), BigRational(-7, 3),
        BigRational(-7, 3), BigRational(7, 3),  BigRational(7, 3)};
    for (std::size_t i = 0; i < 7; ++i) CHECK(sys.components[i].eval(point) == expected[i]);

    // With a0 = 0 the f0 line vanishes on f0 = 0.
    ParameterVector a = sixths();
    a[0] = BigRational(0);
    std::vector<BigRational> state = ones;
    state[0] = BigRational(0);
    auto p2 = exact_point(sys, state, BigRational(0), a);
    CHECK(sys.components[0].eval(p2) == BigRational(0));
}

TEST_CASE("piii system components") {
    auto sys = build_piii_system();
    REQUIRE(sys.dimension() == 4);
    CHECK_FALSE(sys.is_autonomous);
    CHECK(sys.name == "piii");

    const auto& R = Context::reduced();
    auto v = [&](const char* n) { return RationalFunction::variable(R, n); };
    auto x = v("x"), y = v("y"), T = v("T"), a0 = v("a0"), a1 = v("a1");
    CHECK(sys.components[1] ==
          (-2 * x * y * y + 2 * x * y - (a0 + a1) * y + a1) / T);

    std::vector<BigRational> ones(4, BigRational(1));
    auto point = exact_point(sys, ones, BigRational(1), sixths());
    const BigRational expected[] = {BigRational(7, 3), BigRational(-1, 6), BigRational(7, 3),
                                    BigRational(-1, 6)};
    for (std::size_t i = 0; i < 4; ++i) CHECK(sys.components[i].eval(point) == expected[i]);

    // T = 0 is a fixed singularity of every component with a T-denominator.
    auto p0 = exact_point(sys, ones, BigRational(0), sixths());
    CHECK_THROWS_AS(sys.components[0].eval(p0), DivisionByZero);
}

TEST_CASE("hamiltonian value, structure, and swap symmetry") {
    auto H = build_hamiltonian().H;
    const auto& R = Context::reduced();

    std::vector<BigRational> point(R.size(), BigRational(1));
    for (std::size_t k = 0; k < 5; ++k)
        point[static_cast<std::size_t>(R.alpha_index(k))] = BigRational(1, 6);
    CHECK(H.eval(point) == BigRational(1, 3));

    CHECK(H.den().degree_in(R.index_of("T")) == 1);

    auto v = [&](const char* n) { return RationalFunction::variable(R, n); };
    std::map<std::string, RationalFunction> swap{
        {"x", v("z")}, {"z", v("x")}, {"y", v("w")}, {"w", v("y")},
        {"a0", v("a3")}, {"a3", v("a0")}, {"a1", v("a4")}, {"a4", v("a1")}};
    CHECK(H.substitute(swap, R) == H);
}

TEST_CASE("eval_field agrees with exact evaluation") {
    auto autonomous = build_autonomous_system();
    auto piii = build_piii_system();
    std::mt19937_64 rng(3);

    auto rand_rat = [&] {
        return BigRational(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 10));
    };

    for (int iter = 0; iter < 100; ++iter) {
        const SystemDefinition& sys = (iter % 2 == 0) ? autonomous : piii;
        std::vector<BigRational> state(sys.dimension());
        for (auto& s : state) s = rand_rat();
        BigRational time = rand_rat();
        if (time == 0) time = BigRational(1, 3);
        ParameterVector alpha;
        for (auto& a : alpha) a = rand_rat();

        auto point = exact_point(sys, state, time, alpha);
        std::vector<double> dstate(state.size());
        for (std::size_t i = 0; i < state.size(); ++i) dstate[i] = static_cast<double>(state[i]);
        auto field = eval_field(sys, dstate, static_cast<double>(time), to_double(alpha));

        for (std::size_t i = 0; i < field.size(); ++i) {
            const double exact = static_cast<double>(sys.components[i].eval(point));
            const double scale = std::max(1.0, std::abs(exact));
            CHECK(std::abs(field[i] - exact) <= 1e-13 * scale);
        }
    }
}

TEST_CASE("eval_field rejects bad input") {
    auto piii = build_piii_system();
    std::vector<double> ones4(4, 1.0);
    CHECK_THROWS_AS(eval_field(piii, ones4, 0.0, {0.2, 0.2, 0.2, 0.2, 0.2}),
                    SingularEvaluation);
    std::vector<double> ones3(3, 1.0);
    CHECK_THROWS_AS(eval_field(piii, ones3, 1.0, {0.2, 0.2, 0.2, 0.2, 0.2}), DomainError);

    auto field = eval_field(piii, ones4, 1.0, {1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6});
    CHECK(field[0] == doctest::Approx(7.0 / 3).epsilon(1e-14));
    CHECK(field[1] == doctest::Approx(-1.0 / 6).epsilon(1e-14));
}
