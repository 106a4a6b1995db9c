#include "halomd/minimize.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace halomd {

namespace {

double max_force_norm(const State& state) {
    double fmax = 0.0;
    for (const auto& f : state.forces) fmax = std::max(fmax, norm(f));
    return fmax;
}

} // namespace

MinimizeTrace steepest_descent_minimize(State& state, const ForceFunction& force_fn,
                                        const EmConfig& cfg) {
    MinimizeTrace trace;
    double energy = force_fn(state);
    if (!std::isfinite(energy)) throw std::runtime_error("initial energy not finite");
    double fmax = max_force_norm(state);
    double h = cfg.initial_step;

    std::vector<Vec3> best_positions = state.positions;
    std::vector<Vec3> best_forces = state.forces;

    while (trace.iterations < cfg.max_steps && fmax > cfg.force_tolerance) {
        if (h < 1e-9) throw std::runtime_error("steepest-descent step underflow (stalled)");
        ++trace.iterations;

        for (int i = 0; i < state.n_atoms(); ++i)
            state.positions[i] = best_positions[i] + state.forces[i] * (h / fmax);

        double trial = std::numeric_limits<double>::infinity();
        try {
            trial = force_fn(state);
        } catch (const std::runtime_error&) {
            // overlap in the trial configuration counts as a rejected move
        }
        if (std::isfinite(trial) && trial < energy) {
            energy = trial;
            fmax = max_force_norm(state);
            best_positions = state.positions;
            best_forces = state.forces;
            h *= cfg.grow;
            ++trace.accepted;
            trace.accepted_energies.push_back(energy);
        } else {
            state.positions = best_positions;
            state.forces = best_forces;
            h *= cfg.shrink;
        }
    }

    state.forces = best_forces;
    trace.converged = fmax <= cfg.force_tolerance;
    trace.final_energy = energy;
    trace.final_max_force = fmax;
    return trace;
}

} // namespace halomd
