#include "weylflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "weylflow/errors.hpp"

namespace weylflow {

namespace {

// Dormand-Prince 5(4) tableau. The seventh row doubles as the fifth-order
// weights (FSAL), kE holds b5 - b4.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kE[7] = {71.0 / 57600,      0.0,         -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

// A rational function with coefficients lowered to double, for the
// integrator's inner loop; exactness is ratcalc's business, not the ODE
// solver's.
struct CompiledTerm {
    double coefficient;
    std::vector<std::pair<std::size_t, std::uint32_t>> powers;
};

struct CompiledRF {
    std::vector<CompiledTerm> num;
    std::vector<CompiledTerm> den; // empty means the constant 1

    static std::vector<CompiledTerm> compile(const Polynomial& p) {
        std::vector<CompiledTerm> out;
        out.reserve(p.term_count());
        for (const auto& [e, c] : p.terms()) {
            CompiledTerm t{c.convert_to<double>(), {}};
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) t.powers.emplace_back(i, e[i]);
            out.push_back(std::move(t));
        }
        return out;
    }

    explicit CompiledRF(const RationalFunction& f) : num(compile(f.num())) {
        if (!f.den().is_constant()) den = compile(f.den());
    }

    static double eval_terms(const std::vector<CompiledTerm>& terms,
                             std::span<const double> point) {
        double acc = 0.0;
        for (const auto& t : terms) {
            double v = t.coefficient;
            for (const auto& [idx, exp] : t.powers) {
                double p = point[idx];
                std::uint32_t k = exp;
                double pw = 1.0;
                while (k > 0) {
                    if (k & 1u) pw *= p;
                    k >>= 1u;
                    if (k > 0) p *= p;
                }
                v *= pw;
            }
            acc += v;
        }
        return acc;
    }

    double eval(std::span<const double> point) const {
        const double n = eval_terms(num, point);
        return den.empty() ? n : n / eval_terms(den, point);
    }
};

class CompiledField {
public:
    CompiledField(const SystemDefinition& sys, const std::array<double, 5>& alpha)
        : dim_(sys.dimension()), time_index_(static_cast<std::size_t>(sys.context().time_index())),
          point_(sys.context().size(), 0.0) {
        for (const auto& c : sys.components) components_.emplace_back(c);
        for (std::size_t k = 0; k < 5; ++k)
            point_[static_cast<std::size_t>(sys.context().alpha_index(k))] = alpha[k];
    }

    void operator()(double t, std::span<const double> y, std::span<double> dydt) {
        std::copy(y.begin(), y.end(), point_.begin());
        point_[time_index_] = t;
        for (std::size_t i = 0; i < components_.size(); ++i)
            dydt[i] = components_[i].eval(point_);
    }

    std::size_t dimension() const { return dim_; }

private:
    std::size_t dim_;
    std::size_t time_index_;
    std::vector<double> point_;
    std::vector<CompiledRF> components_;
};

double max_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Hairer-style starting step selection.
double initial_step(CompiledField& f, double t0, std::span<const double> y0,
                    std::span<const double> f0, double dir, double span,
                    const IntegrationConfig& cfg) {
    const std::size_t n = y0.size();
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sc = cfg.atol + cfg.rtol * std::abs(y0[i]);
        d0 += (y0[i] / sc) * (y0[i] / sc);
        d1 += (f0[i] / sc) * (f0[i] / sc);
    }
    d0 = std::sqrt(d0 / static_cast<double>(n));
    d1 = std::sqrt(d1 / static_cast<double>(n));
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * (d0 / d1);
    h0 = std::min(h0, span);

    std::vector<double> y1(n), f1(n);
    for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + h0 * dir * f0[i];
    f(t0 + h0 * dir, y1, f1);
    double d2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sc = cfg.atol + cfg.rtol * std::abs(y0[i]);
        d2 += ((f1[i] - f0[i]) / sc) * ((f1[i] - f0[i]) / sc);
    }
    d2 = std::sqrt(d2 / static_cast<double>(n)) / h0;

    double h1;
    if (std::max(d1, d2) <= 1e-15) {
        h1 = std::max(1e-6, h0 * 1e-3);
    } else {
        h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
    }
    return std::min({100.0 * h0, h1, span});
}

void domain_check(const SystemDefinition& sys, double t0, double t1) {
    if (!sys.is_autonomous && std::min(t0, t1) <= 0.0 && std::max(t0, t1) >= 0.0) {
        throw DomainError("system " + sys.name + ": time interval [" + std::to_string(t0) +
                          ", " + std::to_string(t1) + "] contains the fixed singularity 0");
    }
}

Trajectory run_integration(const SystemDefinition& sys, const std::array<double, 5>& alpha,
                           std::span<const double> y0, std::span<const double> targets,
                           const IntegrationConfig& cfg) {
    const std::size_t n = sys.dimension();
    if (y0.size() != n) throw DomainError("initial state dimension mismatch");
    if (targets.size() < 2) throw DomainError("need at least two output times");
    const double dir = targets.back() > targets.front() ? 1.0 : -1.0;
    for (std::size_t i = 1; i < targets.size(); ++i) {
        if ((targets[i] - targets[i - 1]) * dir <= 0.0)
            throw DomainError("output times must be strictly monotone");
    }
    domain_check(sys, targets.front(), targets.back());

    Trajectory traj;
    traj.system = sys.name;
    traj.alpha = alpha;
    traj.config = cfg;

    CompiledField f(sys, alpha);
    std::vector<double> y(y0.begin(), y0.end());
    double t = targets.front();
    traj.times.push_back(t);
    traj.states.emplace_back(y);

    std::array<std::vector<double>, 7> k;
    for (auto& ki : k) ki.resize(n);
    std::vector<double> ytmp(n), ynew(n);

    f(t, y, k[0]);
    const double span = std::abs(targets.back() - targets.front());
    double h = initial_step(f, t, y, k[0], dir, span, cfg) * dir;

    constexpr double kSafe = 0.9;
    constexpr double kBeta = 0.04;
    constexpr double kExpo = 0.2 - kBeta * 0.75;
    constexpr double kMaxShrink = 5.0; // h may shrink 5x or grow 10x per step
    constexpr double kMaxGrow = 10.0;
    double facold = 1e-4;
    long steps = 0;
    bool last_rejected = false;

    for (std::size_t target_idx = 1; target_idx < targets.size(); ++target_idx) {
        const double target = targets[target_idx];
        while ((target - t) * dir > 0.0) {
            if (steps >= cfg.max_steps) {
                traj.termination = Termination::step_limit;
                return traj;
            }
            if (cfg.max_step > 0.0 && std::abs(h) > cfg.max_step) h = cfg.max_step * dir;
            bool hit_target = false;
            if ((t + h - target) * dir >= 0.0) {
                h = target - t;
                hit_target = true;
            }
            if (t + h == t) { // step underflow: movable pole
                traj.termination = Termination::blowup;
                return traj;
            }
            ++steps;

            for (int stage = 1; stage < 7; ++stage) {
                for (std::size_t i = 0; i < n; ++i) {
                    double acc = 0.0;
                    for (int s = 0; s < stage; ++s) acc += kA[stage][s] * k[s][i];
                    ytmp[i] = y[i] + h * acc;
                }
                f(t + kC[stage] * h, ytmp, k[stage]);
            }
            // Stage 7 evaluated ynew already (FSAL): ytmp holds it.
            ynew = ytmp;

            double err = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double e = 0.0;
                for (int s = 0; s < 7; ++s) e += kE[s] * k[s][i];
                e *= h;
                const double sc = cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                err += (e / sc) * (e / sc);
            }
            err = std::sqrt(err / static_cast<double>(n));
            if (!std::isfinite(err) || !all_finite(ynew)) err = 1e10;

            if (err <= 1.0) {
                t = hit_target ? target : t + h;
                y = ynew;
                std::swap(k[0], k[6]); // FSAL
                const double fac11 = std::pow(std::max(err, 1e-16), kExpo);
                double fac = fac11 / std::pow(facold, kBeta);
                fac = std::max(1.0 / kMaxGrow, std::min(kMaxShrink, fac / kSafe));
                double hnew = h / fac;
                if (last_rejected) hnew = dir * std::min(std::abs(hnew), std::abs(h));
                h = hnew;
                facold = std::max(err, 1e-4);
                last_rejected = false;

                if (max_norm(y) > cfg.blowup_threshold) {
                    traj.times.push_back(t);
                    traj.states.emplace_back(y);
                    traj.termination = Termination::blowup;
                    return traj;
                }
                if (cfg.record_steps && !hit_target) {
                    traj.times.push_back(t);
                    traj.states.emplace_back(y);
                }
            } else {
                const double fac11 = std::pow(err, kExpo);
                h = h / std::min(kMaxShrink, fac11 / kSafe);
                last_rejected = true;
            }
        }
        traj.times.push_back(t);
        traj.states.emplace_back(y);
    }
    return traj;
}

std::vector<double> even_grid(double t0, double t1, int points) {
    const int n = std::max(points, 2);
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        grid[static_cast<std::size_t>(i)] = t0 + (t1 - t0) * static_cast<double>(i) /
                                                     static_cast<double>(n - 1);
    grid.back() = t1;
    return grid;
}

const SystemDefinition& system_for(const std::string& name) {
    static const SystemDefinition autonomous = build_autonomous_system();
    static const SystemDefinition piii = build_piii_system();
    if (name == "autonomous") return autonomous;
    if (name == "piii") return piii;
    throw DomainError("unknown system '" + name + "'");
}

} // namespace

std::string_view termination_name(Termination t) {
    switch (t) {
        case Termination::completed: return "completed";
        case Termination::blowup: return "blowup";
        case Termination::step_limit: return "step_limit";
    }
    return "step_limit";
}

Trajectory integrate(const SystemDefinition& sys, const std::array<double, 5>& alpha,
                     std::span<const double> y0, double t0, double t1,
                     const IntegrationConfig& cfg) {
    if (t0 == t1) throw DomainError("empty integration interval");
    return run_integration(sys, alpha, y0, even_grid(t0, t1, cfg.grid_points), cfg);
}

Trajectory integrate(const SystemDefinition& sys, const ParameterVector& alpha,
                     std::span<const double> y0, double t0, double t1,
                     const IntegrationConfig& cfg) {
    return integrate(sys, to_double(alpha), y0, t0, t1, cfg);
}

Trajectory integrate_at(const SystemDefinition& sys, const std::array<double, 5>& alpha,
                        std::span<const double> y0, std::span<const double> times,
                        const IntegrationConfig& cfg) {
    return run_integration(sys, alpha, y0, times, cfg);
}

std::vector<double> dopri5_step(const SystemDefinition& sys, const std::array<double, 5>& alpha,
                                std::span<const double> y, double t, double h) {
    const std::size_t n = sys.dimension();
    CompiledField f(sys, alpha);
    std::array<std::vector<double>, 7> k;
    for (auto& ki : k) ki.resize(n);
    std::vector<double> ytmp(n);
    f(t, y, k[0]);
    for (int stage = 1; stage < 7; ++stage) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int s = 0; s < stage; ++s) acc += kA[stage][s] * k[s][i];
            ytmp[i] = y[i] + h * acc;
        }
        f(t + kC[stage] * h, ytmp, k[stage]);
    }
    return ytmp;
}

DriftReport monitor_invariants(const Trajectory& traj) {
    if (traj.system != "autonomous")
        throw DomainError("invariant monitor expects an autonomous trajectory");
    if (traj.size() == 0) throw DomainError("empty trajectory");

    auto values = [&](std::size_t k) {
        const auto& s = traj.states[k];
        const double i3 = (s[2] - s[5] * s[6]) * std::exp(-traj.times[k]);
        return std::array<double, 3>{s[0] - s[1], s[3] - s[4], i3};
    };
    const auto base = values(0);
    DriftReport drift;
    for (std::size_t k = 1; k < traj.size(); ++k) {
        const auto v = values(k);
        drift.i1 = std::max(drift.i1, std::abs(v[0] - base[0]));
        drift.i2 = std::max(drift.i2, std::abs(v[1] - base[1]));
        drift.i3 = std::max(drift.i3, std::abs(v[2] - base[2]));
    }
    return drift;
}

MappedTrajectory map_trajectory(const Trajectory& traj, const RationalMap& m) {
    const SystemDefinition& sys = system_for(traj.system);
    if (&sys.context() != &m.context())
        throw DomainError("map '" + m.name + "' does not act on system " + traj.system);

    MappedTrajectory out;
    out.alpha_image = m.params.apply(traj.alpha);
    out.image.system = traj.system;
    out.image.alpha = out.alpha_image;
    out.image.config = traj.config;

    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double scale =
            std::max({1.0, max_norm(traj.states[k]), std::abs(traj.times[k])});
        try {
            auto img = apply_map_point(m, traj.states[k], traj.alpha, traj.times[k],
                                       1e-10 * scale);
            out.image.times.push_back(img.time);
            out.image.states.push_back(std::move(img.state));
        } catch (const PoleHit&) {
            ++out.dropped_samples;
        }
    }
    if (out.image.size() == 0)
        throw AllSamplesPoles("map '" + m.name + "': every sample sits on a pole");

    out.reintegrated = integrate_at(sys, out.alpha_image, out.image.states.front(),
                                    out.image.times, traj.config);
    const std::size_t common = std::min(out.reintegrated.size(), out.image.size());
    for (std::size_t k = 0; k < common; ++k) {
        double diff = 0.0;
        for (std::size_t i = 0; i < sys.dimension(); ++i)
            diff = std::max(diff,
                            std::abs(out.reintegrated.states[k][i] - out.image.states[k][i]));
        out.discrepancy = std::max(out.discrepancy, diff);
    }
    return out;
}

std::string trajectory_csv(const Trajectory& traj) {
    const SystemDefinition& sys = system_for(traj.system);
    const Context& ctx = sys.context();
    std::string csv = ctx.symbol(ctx.time_index());
    for (std::size_t i = 0; i < sys.dimension(); ++i) csv += "," + sys.phase_symbol(i);
    csv += "\n";
    char buf[32];
    for (std::size_t k = 0; k < traj.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", traj.times[k]);
        csv += buf;
        for (double v : traj.states[k]) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            csv += ",";
            csv += buf;
        }
        csv += "\n";
    }
    return csv;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot open '" + path + "' for writing");
    out << trajectory_csv(traj);
}

} // namespace weylflow
