#ifndef WEYLFLOW_MODEL_HPP
#define WEYLFLOW_MODEL_HPP

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weylflow/rational_function.hpp"

namespace weylflow {

using ParameterVector = std::array<BigRational, 5>;

// (1,1,2,1,1)-weighted sum; the normalization pins it to 1.
BigRational alpha_weighted_sum(const ParameterVector& a);
bool is_normalized(const ParameterVector& a);

// Comma-separated exact rationals, e.g. "1/6,1/6,1/6,1/6,1/6".
std::optional<ParameterVector> parse_parameter_vector(std::string_view csv);

std::array<double, 5> to_double(const ParameterVector& a);

// A first-order system d(phase_i)/d(time) = components[i], with the phase
// variables, time symbol and parameters drawn from one shared context.
struct SystemDefinition {
    std::string name; // "autonomous" | "piii"
    const Context* ctx;
    std::vector<RationalFunction> components;
    bool is_autonomous; // no component mentions the time symbol

    const Context& context() const { return *ctx; }
    std::size_t dimension() const { return ctx->phase_count(); }
    const std::string& phase_symbol(std::size_t i) const {
        return ctx->symbol(static_cast<int>(i));
    }
};

// The seven-component autonomous system in f0..f4, g1, g2.
SystemDefinition build_autonomous_system();
// The four-component system in x, y, z, w with time symbol T.
SystemDefinition build_piii_system();

struct Hamiltonian {
    RationalFunction H; // reduced context
};
Hamiltonian build_hamiltonian();

// binary64 evaluation of all components at (state, time, alpha). Throws
// SingularEvaluation when a denominator vanishes (e.g. piii at T = 0).
std::vector<double> eval_field(const SystemDefinition& sys, std::span<const double> state,
                               double time, const std::array<double, 5>& alpha);

} // namespace weylflow

#endif
