#ifndef WEYLFLOW_BACKLUND_HPP
#define WEYLFLOW_BACKLUND_HPP

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weylflow/model.hpp"
#include "weylflow/report.hpp"

namespace weylflow {

enum class Variant { autonomous, reduced };

const Context& context_of(Variant v);
std::string_view variant_system_name(Variant v); // "autonomous" | "piii"

// Affine action alpha -> M*alpha + shift on the five parameters.
struct ParamAction {
    std::array<std::array<BigRational, 5>, 5> matrix{};
    std::array<BigRational, 5> shift{};

    static ParamAction identity();

    ParameterVector apply(const ParameterVector& a) const;
    std::array<double, 5> apply(const std::array<double, 5>& a) const;

    // Composition this∘inner (inner acts first).
    ParamAction after(const ParamAction& inner) const;

    bool is_identity() const;
    // (1,1,2,1,1)·(M·a + shift) == (1,1,2,1,1)·a on the hyperplane where the
    // weighted sum equals 1.
    bool preserves_constraint() const;

    bool operator==(const ParamAction& o) const = default;
};

// A birational change of the phase variables together with its parameter
// action and the time action time -> time_sign·time. Images may mention the
// time symbol (reduced maps) and the parameter symbols.
struct RationalMap {
    std::string name; // word form, e.g. "s2" or "pi3 s0 pi3"
    const Context* ctx;
    std::vector<RationalFunction> images; // one per phase variable
    ParamAction params;
    int time_sign = 1;

    const Context& context() const { return *ctx; }
    Variant variant() const;

    // Substitution bindings: phase images, the induced alpha images, and
    // time -> time_sign·time.
    std::map<int, RationalFunction> bindings() const;

    bool is_identity() const;
};

RationalMap identity_map(Variant v);
RationalMap build_s(int i, Variant v); // i in 0..4
RationalMap build_pi(int j);           // j in 1..3, reduced only

// a∘b (b acts first). Throws DegenerateComposition when an image denominator
// collapses to the zero polynomial.
RationalMap compose(const RationalMap& a, const RationalMap& b);

// Whitespace-separated tokens from {s0..s4, pi1..pi3}; rightmost acts first.
std::vector<std::string> tokenize_word(std::string_view word);
RationalMap build_generator(const std::string& token, Variant v);
RationalMap build_word(std::string_view word, Variant v);

struct ExactPointImage {
    std::vector<BigRational> state;
    ParameterVector alpha;
    BigRational time;
};

// Pointwise application; throws PoleHit naming the vanishing denominator.
ExactPointImage apply_map_point(const RationalMap& m, std::span<const BigRational> state,
                                const ParameterVector& alpha, const BigRational& time);

struct FloatPointImage {
    std::vector<double> state;
    std::array<double, 5> alpha;
    double time;
};

// Float counterpart; a denominator with |value| <= pole_tolerance is a pole.
FloatPointImage apply_map_point(const RationalMap& m, std::span<const double> state,
                                const std::array<double, 5>& alpha, double time,
                                double pole_tolerance = 0.0);

// For each phase variable j, the exact identity
//   (d/dtime phi_j + sum_i dphi_j/du_i · F_i(u, a, time)) / time_sign
//     == F_j(phi(u), M·a + shift, time_sign·time),
// compared modulo the parameter constraint unless use_constraint is false.
VerificationReport verify_invariance(const SystemDefinition& sys, const RationalMap& m,
                                     bool use_constraint = true);

// d(f0−f1)/dt = 0, d(f3−f4)/dt = 0, and d(f2−g1g2)/dt = f2−g1g2 along the
// autonomous flow; one report per conserved quantity.
std::vector<VerificationReport> verify_first_integrals(const SystemDefinition& sys,
                                                       bool use_constraint = true);

// For each i: f_i divides the f_i-component at a_i = 0 (exact polynomial
// division), and does not divide it with a_i left symbolic.
std::vector<VerificationReport> verify_invariant_divisors(const SystemDefinition& sys);

// dx/dT = dH/dy, dy/dT = −dH/dx, dz/dT = dH/dw, dw/dT = −dH/dz, exactly;
// the globally swapped sign convention must fail.
std::vector<VerificationReport> verify_hamiltonian_form();

// The substitution f0 -> y−1, f1 -> y, f2 -> xz+T, f3 -> w−1, f4 -> w,
// g1 -> x, g2 -> z together with d/dt = T·d/dT carries the autonomous system
// to the piii system; checked per reduced variable plus consistency rows.
std::vector<VerificationReport> verify_reduction();

// Word composes to the identity: symbolically, or at n exact sample points
// (resampling on PoleHit); the composed parameter action is always compared
// exactly. Throws ExhaustedResampling after 100·n failed draws.
VerificationReport verify_relation(std::string_view word, Variant v, bool symbolic,
                                   int n_samples, std::uint64_t seed);

// pi_j ∘ s_i ∘ pi_j == s_{sigma_j(i)} at sample points, with exact parameter
// action comparison; sigma_j is read off pi_j's parameter permutation.
VerificationReport verify_diagram_automorphism(int j, int n_samples, std::uint64_t seed);

// Suite drivers used by the CLI and the acceptance harness.
std::vector<VerificationReport> invariance_suite(bool use_constraint = true);
std::vector<VerificationReport> integrals_suite(bool use_constraint = true);
std::vector<VerificationReport> divisors_suite();
std::vector<VerificationReport> relations_suite(int n_samples, std::uint64_t seed);
std::vector<VerificationReport> automorphism_suite(int n_samples, std::uint64_t seed);

} // namespace weylflow

#endif
