#include "halomd/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace halomd {

namespace {

void check_finite_forces(const State& state) {
    for (int i = 0; i < state.n_atoms(); ++i) {
        const Vec3& f = state.forces[i];
        if (!std::isfinite(f.x) || !std::isfinite(f.y) || !std::isfinite(f.z))
            throw std::runtime_error("non-finite force on atom " + std::to_string(i));
    }
}

} // namespace

void leapfrog_step(State& state, double dt_ps, const std::vector<double>& masses) {
    check_finite_forces(state);
    for (int i = 0; i < state.n_atoms(); ++i) {
        state.velocities[i] += state.forces[i] * (dt_ps / masses[i]);
        state.positions[i] += state.velocities[i] * dt_ps;
    }
    state.step += 1;
    state.time += dt_ps;
}

void velocity_verlet_step(State& state, const ForceFunction& force_fn, double dt_ps,
                          const std::vector<double>& masses) {
    check_finite_forces(state);
    const double half = 0.5 * dt_ps;
    for (int i = 0; i < state.n_atoms(); ++i) {
        state.velocities[i] += state.forces[i] * (half / masses[i]);
        state.positions[i] += state.velocities[i] * dt_ps;
    }
    force_fn(state);
    check_finite_forces(state);
    for (int i = 0; i < state.n_atoms(); ++i) {
        state.velocities[i] += state.forces[i] * (half / masses[i]);
    }
    state.step += 1;
    state.time += dt_ps;
}

double berendsen_thermostat(State& state, double t_now, double t0, double tau_t, double dt_ps) {
    if (t_now <= 0.0) return 1.0;
    double lambda = std::sqrt(1.0 + (dt_ps / tau_t) * (t0 / t_now - 1.0));
    lambda = std::clamp(lambda, 0.8, 1.25);
    for (auto& v : state.velocities) v *= lambda;
    return lambda;
}

double berendsen_barostat(State& state, double p_now, double p0, double tau_p, double dt_ps,
                          double compressibility) {
    double mu = std::cbrt(1.0 - (dt_ps / tau_p) * compressibility * (p0 - p_now));
    mu = std::clamp(mu, 0.98, 1.02);
    if (mu == 1.0) return mu;
    state.box.lengths *= mu;
    for (auto& r : state.positions) r *= mu;
    return mu;
}

} // namespace halomd
