#ifndef WEYLFLOW_FLOW_HPP
#define WEYLFLOW_FLOW_HPP

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weylflow/backlund.hpp"
#include "weylflow/model.hpp"

namespace weylflow {

struct IntegrationConfig {
    double rtol = 1e-10;
    double atol = 1e-12;
    double max_step = 0.0;         // 0 = no cap
    double blowup_threshold = 1e8; // on the state max-norm
    long max_steps = 1000000;
    int grid_points = 257;         // evenly spaced output samples, endpoints included
    bool record_steps = false;     // additionally record every accepted step
};

enum class Termination { completed, blowup, step_limit };
std::string_view termination_name(Termination t);

struct Trajectory {
    std::string system; // "autonomous" | "piii"
    std::array<double, 5> alpha{};
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    Termination termination = Termination::completed;
    IntegrationConfig config;

    bool completed() const { return termination == Termination::completed; }
    std::size_t size() const { return times.size(); }
};

// Adaptive Dormand-Prince 5(4) with proportional-integral step control.
// Steps are clamped to land exactly on the output grid. Integration runs
// from t0 to t1 in either direction; a blow-up (max-norm beyond the
// threshold, or step underflow near a movable pole) ends the trajectory
// early with the corresponding termination status. Throws DomainError when
// the piii time interval contains 0.
Trajectory integrate(const SystemDefinition& sys, const std::array<double, 5>& alpha,
                     std::span<const double> y0, double t0, double t1,
                     const IntegrationConfig& cfg = {});
Trajectory integrate(const SystemDefinition& sys, const ParameterVector& alpha,
                     std::span<const double> y0, double t0, double t1,
                     const IntegrationConfig& cfg = {});

// Same stepper, but sampling exactly at the given strictly monotone times;
// times.front() is the initial time.
Trajectory integrate_at(const SystemDefinition& sys, const std::array<double, 5>& alpha,
                        std::span<const double> y0, std::span<const double> times,
                        const IntegrationConfig& cfg = {});

// One fixed step of the fifth-order solution, exposed for order checks.
std::vector<double> dopri5_step(const SystemDefinition& sys, const std::array<double, 5>& alpha,
                                std::span<const double> y, double t, double h);

struct DriftReport {
    double i1 = 0.0; // max |(f0-f1)(t) - (f0-f1)(t0)|
    double i2 = 0.0; // same for f3-f4
    double i3 = 0.0; // same for (f2-g1*g2)*exp(-t)
};
// Conserved-quantity drift along an autonomous trajectory.
DriftReport monitor_invariants(const Trajectory& traj);

struct MappedTrajectory {
    Trajectory image;        // pointwise-mapped samples, time scaled by time_sign
    Trajectory reintegrated; // fresh integration from the image initial sample
    std::array<double, 5> alpha_image{};
    std::size_t dropped_samples = 0; // samples skipped by the pole filter
    double discrepancy = 0.0;        // max pointwise max-norm difference
};

// Applies the map to every sample (dropping near-pole samples), then
// validates equivariance by re-integrating the image system from the first
// mapped sample across the image time grid. Throws AllSamplesPoles when the
// pole filter leaves nothing.
MappedTrajectory map_trajectory(const Trajectory& traj, const RationalMap& m);

std::string trajectory_csv(const Trajectory& traj);
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

} // namespace weylflow

#endif
