#pragma once

#include <vector>

#include "halomd/integrators.hpp"
#include "halomd/state.hpp"

namespace halomd {

struct EmConfig {
    double initial_step = 0.01;     // nm
    int max_steps = 5000;
    double force_tolerance = 10.0;  // kJ·mol⁻¹·nm⁻¹
    double grow = 1.2;
    double shrink = 0.2;
};

struct MinimizeTrace {
    bool converged = false;
    int iterations = 0;
    int accepted = 0;
    double final_energy = 0.0;
    double final_max_force = 0.0;
    std::vector<double> accepted_energies; // strictly decreasing
};

// Steepest descent: r' = r + h·F/max|F_i|, accept on energy decrease
// (h ← grow·h), otherwise reject (h ← shrink·h). Stops at the force
// tolerance or max_steps; throws std::runtime_error when h underflows.
MinimizeTrace steepest_descent_minimize(State& state, const ForceFunction& force_fn,
                                        const EmConfig& cfg);

} // namespace halomd
