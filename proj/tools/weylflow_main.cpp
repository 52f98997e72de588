// weylflow: verification suites, numeric integration, and map application
// for the coupled Painlevé III systems with D4 affine Weyl symmetry.

#include <array>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weylflow/backlund.hpp"
#include "weylflow/errors.hpp"
#include "weylflow/flow.hpp"
#include "weylflow/model.hpp"
#include "weylflow/report.hpp"

namespace {

using namespace weylflow;

constexpr int kPass = 0;       // all checks passed
constexpr int kFail = 1;       // verification/relation failure or pole
constexpr int kUsage = 2;      // malformed flags or invalid domain
constexpr int kIncomplete = 3; // integration did not reach the endpoint

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        out.push_back(text.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

// "p", "-p", "p/q" stay exact; anything else must be a full decimal literal.
std::optional<double> parse_number(const std::string& token) {
    if (auto q = parse_rational(token)) return q->convert_to<double>();
    try {
        std::size_t used = 0;
        double v = std::stod(token, &used);
        if (used == token.size()) return v;
    } catch (const std::exception&) {
    }
    return std::nullopt;
}

std::optional<std::vector<double>> parse_number_csv(const std::string& text) {
    std::vector<double> out;
    for (const auto& tok : split_csv(text)) {
        auto v = parse_number(tok);
        if (!v) return std::nullopt;
        out.push_back(*v);
    }
    return out;
}

std::optional<std::vector<BigRational>> parse_exact_csv(const std::string& text) {
    std::vector<BigRational> out;
    for (const auto& tok : split_csv(text)) {
        auto q = parse_rational(tok);
        if (!q) return std::nullopt;
        out.push_back(*q);
    }
    return out;
}

std::string format17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool write_reports(const std::vector<VerificationReport>& reports, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        std::fprintf(stderr, "error: cannot open '%s' for writing\n", path.c_str());
        return false;
    }
    out << reports_to_json(reports).dump(2) << '\n';
    return bool(out);
}

int finish_reports(std::vector<VerificationReport> reports, const std::string& json_path) {
    std::size_t passed = 0;
    for (const auto& r : reports)
        if (r.passed())
            ++passed;
        else
            std::printf("FAIL %s\n", r.check_id.c_str());
    std::printf("checks: %zu, passed: %zu, failed: %zu\n", reports.size(), passed,
                reports.size() - passed);
    bool ok = all_passed(reports);
    if (!json_path.empty() && !write_reports(reports, json_path)) return kUsage;
    return ok ? kPass : kFail;
}

std::optional<Variant> variant_for_dimension(std::size_t n) {
    if (n == 7) return Variant::autonomous;
    if (n == 4) return Variant::reduced;
    return std::nullopt;
}

struct VerifyOptions {
    std::string suite = "all";
    std::string json_path;
    bool plain_mode = false;
    int samples = 20;
    std::uint64_t seed = 42;
};

int run_verify(const VerifyOptions& opt) {
    std::vector<VerificationReport> reports;
    auto take = [&](std::vector<VerificationReport> part) {
        for (auto& r : part) reports.push_back(std::move(r));
    };
    bool all = opt.suite == "all";
    if (all || opt.suite == "invariance") take(invariance_suite(!opt.plain_mode));
    if (all || opt.suite == "integrals") take(integrals_suite(!opt.plain_mode));
    if (all || opt.suite == "divisors") take(divisors_suite());
    if (all || opt.suite == "hamiltonian") take(verify_hamiltonian_form());
    if (all || opt.suite == "reduction") take(verify_reduction());
    if (all || opt.suite == "relations") take(relations_suite(opt.samples, opt.seed));
    if (all || opt.suite == "automorphisms") take(automorphism_suite(opt.samples, opt.seed));
    return finish_reports(std::move(reports), opt.json_path);
}

struct IntegrateOptions {
    std::string system;
    std::string alpha;
    std::string init;
    double t0 = 0.0;
    double t1 = 0.0;
    double rtol = IntegrationConfig{}.rtol;
    double atol = IntegrationConfig{}.atol;
    std::string out_path;
    bool allow_unnormalized = false;
};

int run_integrate(const IntegrateOptions& opt) {
    auto alpha = parse_parameter_vector(opt.alpha);
    if (!alpha) {
        std::fprintf(stderr, "error: --alpha wants five comma-separated p/q literals\n");
        return kUsage;
    }
    if (!is_normalized(*alpha) && !opt.allow_unnormalized) {
        std::fprintf(stderr,
                     "error: alpha0+alpha1+2*alpha2+alpha3+alpha4 = %s != 1 "
                     "(pass --allow-unnormalized to proceed)\n",
                     to_string(alpha_weighted_sum(*alpha)).c_str());
        return kUsage;
    }
    auto y0 = parse_number_csv(opt.init);
    if (!y0) {
        std::fprintf(stderr, "error: --init is not a comma-separated number list\n");
        return kUsage;
    }
    const SystemDefinition sys =
        opt.system == "autonomous" ? build_autonomous_system() : build_piii_system();
    if (y0->size() != sys.dimension()) {
        std::fprintf(stderr, "error: system '%s' wants %zu initial values, got %zu\n",
                     sys.name.c_str(), sys.dimension(), y0->size());
        return kUsage;
    }
    IntegrationConfig cfg;
    cfg.rtol = opt.rtol;
    cfg.atol = opt.atol;
    if (!(cfg.rtol > 0.0) || !(cfg.atol > 0.0)) {
        std::fprintf(stderr, "error: tolerances must be positive\n");
        return kUsage;
    }
    Trajectory traj;
    try {
        traj = integrate(sys, *alpha, *y0, opt.t0, opt.t1, cfg);
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    try {
        write_trajectory_csv(traj, opt.out_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    std::printf("termination: %s\n", std::string(termination_name(traj.termination)).c_str());
    std::printf("samples: %zu\n", traj.size());
    if (sys.is_autonomous) {
        auto drift = monitor_invariants(traj);
        std::printf("drift f0-f1: %s\n", format17(drift.i1).c_str());
        std::printf("drift f3-f4: %s\n", format17(drift.i2).c_str());
        std::printf("drift (f2-g1*g2)*exp(-t): %s\n", format17(drift.i3).c_str());
    }
    return traj.completed() ? kPass : kIncomplete;
}

struct OrbitOptions {
    std::string word;
    std::string alpha;
    std::string point;
    std::string time;
};

int run_orbit(const OrbitOptions& opt) {
    auto exact_point = parse_exact_csv(opt.point);
    auto exact_alpha = parse_exact_csv(opt.alpha);
    auto exact_time = parse_rational(opt.time);
    bool exact = exact_point && exact_alpha && exact_alpha->size() == 5 && exact_time;

    auto dims = variant_for_dimension(split_csv(opt.point).size());
    if (!dims) {
        std::fprintf(stderr, "error: --point wants 7 values (autonomous) or 4 (piii)\n");
        return kUsage;
    }
    RationalMap map;
    try {
        map = build_word(opt.word, *dims);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }

    try {
        if (exact) {
            ParameterVector alpha;
            std::copy(exact_alpha->begin(), exact_alpha->end(), alpha.begin());
            auto img = apply_map_point(map, *exact_point, alpha, *exact_time);
            std::string pt;
            for (const auto& v : img.state) {
                if (!pt.empty()) pt += ',';
                pt += to_string(v);
            }
            std::string al;
            for (const auto& v : img.alpha) {
                if (!al.empty()) al += ',';
                al += to_string(v);
            }
            std::printf("point: %s\nalpha: %s\ntime: %s\n", pt.c_str(), al.c_str(),
                        to_string(img.time).c_str());
            return kPass;
        }
        auto point = parse_number_csv(opt.point);
        auto alpha_list = parse_number_csv(opt.alpha);
        auto time = parse_number(opt.time);
        if (!point || !alpha_list || alpha_list->size() != 5 || !time) {
            std::fprintf(stderr, "error: could not parse --point/--alpha/--time\n");
            return kUsage;
        }
        std::array<double, 5> alpha{};
        std::copy(alpha_list->begin(), alpha_list->end(), alpha.begin());
        auto img = apply_map_point(map, *point, alpha, *time);
        std::string pt;
        for (double v : img.state) {
            if (!pt.empty()) pt += ',';
            pt += format17(v);
        }
        std::string al;
        for (double v : img.alpha) {
            if (!al.empty()) al += ',';
            al += format17(v);
        }
        std::printf("point: %s\nalpha: %s\ntime: %s\n", pt.c_str(), al.c_str(),
                    format17(img.time).c_str());
        return kPass;
    } catch (const PoleHit& e) {
        std::fprintf(stderr, "pole: %s\n", e.what());
        std::printf("pole at divisor: %s\n", e.divisor.c_str());
        return kFail;
    }
}

struct RelationsOptions {
    std::string word;
    std::string variant = "both";
    int samples = 20;
    std::uint64_t seed = 42;
    bool symbolic = false;
    std::string json_path;
};

int run_relations(const RelationsOptions& opt) {
    bool has_pi = false;
    try {
        for (const auto& tok : tokenize_word(opt.word))
            if (tok.rfind("pi", 0) == 0) has_pi = true;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    std::vector<Variant> variants;
    if (opt.variant == "autonomous" || (opt.variant == "both" && !has_pi))
        variants.push_back(Variant::autonomous);
    if (opt.variant == "piii" || opt.variant == "both") variants.push_back(Variant::reduced);
    if (has_pi && opt.variant == "autonomous") {
        std::fprintf(stderr, "error: pi generators act on the piii system only\n");
        return kUsage;
    }

    std::vector<VerificationReport> reports;
    try {
        for (Variant v : variants)
            reports.push_back(verify_relation(opt.word, v, opt.symbolic, opt.samples, opt.seed));
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    } catch (const ExhaustedResampling& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFail;
    }
    return finish_reports(std::move(reports), opt.json_path);
}

struct MapTrajectoryOptions {
    std::string word;
    std::string alpha;
    std::string init;
    double t0 = 0.0;
    double t1 = 0.0;
    double tol = 1e-6;
    std::string out_path;
    std::string json_path;
};

int run_map_trajectory(const MapTrajectoryOptions& opt) {
    auto alpha = parse_parameter_vector(opt.alpha);
    if (!alpha) {
        std::fprintf(stderr, "error: --alpha wants five comma-separated p/q literals\n");
        return kUsage;
    }
    auto y0 = parse_number_csv(opt.init);
    if (!y0) {
        std::fprintf(stderr, "error: --init is not a comma-separated number list\n");
        return kUsage;
    }
    auto variant = variant_for_dimension(y0->size());
    if (!variant) {
        std::fprintf(stderr, "error: --init wants 7 values (autonomous) or 4 (piii)\n");
        return kUsage;
    }
    RationalMap map;
    try {
        map = build_word(opt.word, *variant);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    const SystemDefinition sys = *variant == Variant::autonomous ? build_autonomous_system()
                                                                 : build_piii_system();
    Trajectory traj;
    try {
        traj = integrate(sys, *alpha, *y0, opt.t0, opt.t1);
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    if (!traj.completed()) {
        std::fprintf(stderr, "error: source run terminated with %s\n",
                     std::string(termination_name(traj.termination)).c_str());
        return kIncomplete;
    }
    MappedTrajectory mapped;
    try {
        mapped = map_trajectory(traj, map);
    } catch (const AllSamplesPoles& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFail;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    if (!opt.out_path.empty()) {
        try {
            write_trajectory_csv(mapped.image, opt.out_path);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return kUsage;
        }
    }

    std::string word_id = opt.word;
    for (auto& c : word_id)
        if (c == ' ') c = '-';
    VerificationReport report;
    report.check_id = "map_trajectory." + sys.name + "." + word_id;
    report.mode = "sampled";
    bool within = mapped.discrepancy <= opt.tol;
    report.add("re-integration discrepancy <= " + format17(opt.tol),
               format17(mapped.discrepancy), within);
    report.add("pole-filtered samples", std::to_string(mapped.dropped_samples), true);

    std::string al;
    for (double v : mapped.alpha_image) {
        if (!al.empty()) al += ',';
        al += format17(v);
    }
    std::printf("alpha image: %s\n", al.c_str());
    std::printf("dropped samples: %zu\n", mapped.dropped_samples);
    std::printf("discrepancy: %s (tolerance %s)\n", format17(mapped.discrepancy).c_str(),
                format17(opt.tol).c_str());

    if (!opt.json_path.empty() && !write_reports({report}, opt.json_path)) return kUsage;
    if (!mapped.reintegrated.completed()) {
        std::fprintf(stderr, "error: re-integration terminated with %s\n",
                     std::string(termination_name(mapped.reintegrated.termination)).c_str());
        return kIncomplete;
    }
    return within ? kPass : kFail;
}

} // namespace

int main(int argc, char** argv) {
    std::uint64_t seed = 42;
    if (const char* env = std::getenv("WEYLFLOW_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') {
            std::fprintf(stderr, "error: WEYLFLOW_SEED is not an unsigned integer\n");
            return kUsage;
        }
        seed = v;
    }

    CLI::App app{"weylflow: exact Weyl-symmetry verification and adaptive integration\n"
                 "for the coupled Painlevé III systems.\n"
                 "Words such as \"pi3 s0 pi3\" compose right-to-left: the rightmost\n"
                 "generator acts first."};
    app.require_subcommand(1);

    VerifyOptions vo;
    vo.seed = seed;
    auto* verify = app.add_subcommand("verify", "Run the symbolic verification suites");
    verify->add_option("--suite", vo.suite, "Which suite to run")
        ->check(CLI::IsMember({"all", "invariance", "integrals", "divisors", "hamiltonian",
                               "reduction", "relations", "automorphisms"}));
    verify->add_option("--json", vo.json_path, "Write the JSON report array here");
    verify->add_flag("--plain-mode", vo.plain_mode,
                     "Compare without the normalization constraint on alpha");
    verify->add_option("--samples", vo.samples, "Sample count for sampled relation checks")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", vo.seed, "Seed for sampled relation checks");

    IntegrateOptions io;
    auto* integrate_cmd = app.add_subcommand("integrate", "Integrate one system numerically");
    integrate_cmd->add_option("--system", io.system, "autonomous | piii")
        ->required()
        ->check(CLI::IsMember({"autonomous", "piii"}));
    integrate_cmd->add_option("--alpha", io.alpha, "Five p/q literals, comma-separated")
        ->required();
    integrate_cmd->add_option("--init", io.init, "Initial state, comma-separated")->required();
    integrate_cmd->add_option("--t0", io.t0, "Start time")->required();
    integrate_cmd->add_option("--t1", io.t1, "End time")->required();
    integrate_cmd->add_option("--rtol", io.rtol, "Relative tolerance");
    integrate_cmd->add_option("--atol", io.atol, "Absolute tolerance");
    integrate_cmd->add_option("--out", io.out_path, "Trajectory CSV path")->required();
    integrate_cmd->add_flag("--allow-unnormalized", io.allow_unnormalized,
                            "Accept alpha with weighted sum != 1");

    OrbitOptions oo;
    auto* orbit = app.add_subcommand("orbit", "Apply a generator word to one point");
    orbit->add_option("--word", oo.word, "Whitespace-separated generators, rightmost first")
        ->required();
    orbit->add_option("--alpha", oo.alpha, "Five parameter values")->required();
    orbit->add_option("--point", oo.point, "Phase point, 7 values (autonomous) or 4 (piii)")
        ->required();
    orbit->add_option("--time", oo.time, "Time value")->required();

    RelationsOptions ro;
    ro.seed = seed;
    auto* relations = app.add_subcommand("relations", "Check that a word composes to the identity");
    relations->add_option("--word", ro.word, "Whitespace-separated generators")->required();
    relations->add_option("--variant", ro.variant, "Which system the word acts on")
        ->check(CLI::IsMember({"autonomous", "piii", "both"}));
    relations->add_option("--samples", ro.samples, "Exact sample points per check")
        ->check(CLI::PositiveNumber);
    relations->add_option("--seed", ro.seed, "Sampling seed");
    relations->add_flag("--symbolic", ro.symbolic, "Compose symbolically instead of sampling");
    relations->add_option("--json", ro.json_path, "Write the JSON report array here");

    MapTrajectoryOptions mo;
    auto* mapt = app.add_subcommand(
        "map-trajectory", "Push a numeric trajectory through a word and re-integrate the image");
    mapt->add_option("--word", mo.word, "Whitespace-separated generators, rightmost first")
        ->required();
    mapt->add_option("--alpha", mo.alpha, "Five p/q literals, comma-separated")->required();
    mapt->add_option("--init", mo.init, "Initial state, comma-separated")->required();
    mapt->add_option("--t0", mo.t0, "Start time")->required();
    mapt->add_option("--t1", mo.t1, "End time")->required();
    mapt->add_option("--tol", mo.tol, "Equivariance tolerance on the discrepancy");
    mapt->add_option("--out", mo.out_path, "Image trajectory CSV path");
    mapt->add_option("--json", mo.json_path, "Write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (verify->parsed()) return run_verify(vo);
        if (integrate_cmd->parsed()) return run_integrate(io);
        if (orbit->parsed()) return run_orbit(oo);
        if (relations->parsed()) return run_relations(ro);
        if (mapt->parsed()) return run_map_trajectory(mo);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFail;
    }
    return kUsage;
}
