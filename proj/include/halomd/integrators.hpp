#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "halomd/state.hpp"
#include "halomd/topology.hpp"

namespace halomd {

enum class IntegratorScheme { leapfrog, velocity_verlet, steep };

struct ThermostatConfig {
    double t0 = 300.0;  // K
    double tau_t = 0.1; // ps
};

struct BarostatConfig {
    double p0 = 1.0;               // bar
    double tau_p = 1.0;            // ps
    double compressibility = 4.5e-5; // bar⁻¹
};

struct IntegratorConfig {
    double dt_fs = 1.0;
    IntegratorScheme scheme = IntegratorScheme::leapfrog;
    std::optional<ThermostatConfig> thermostat;
    std::optional<BarostatConfig> barostat;

    double dt_ps() const { return dt_fs * 1e-3; }
};

// Recomputes forces for the current positions; returns potential energy.
using ForceFunction = std::function<double(State&)>;

// v(t+½Δt) = v(t−½Δt) + Δt·F/m; r(t+Δt) = r(t) + Δt·v(t+½Δt).
// Throws std::runtime_error naming the atom on non-finite force.
void leapfrog_step(State& state, double dt_ps, const std::vector<double>& masses);

// Kick-drift-kick with synchronized velocities; force_fn is invoked once for
// the post-drift positions.
void velocity_verlet_step(State& state, const ForceFunction& force_fn, double dt_ps,
                          const std::vector<double>& masses);

// Returns the applied scale factor λ = √(1 + (Δt/τ)(T0/T − 1)), clamped to
// [0.8, 1.25].
double berendsen_thermostat(State& state, double t_now, double t0, double tau_t, double dt_ps);

// Isotropic box+coordinate scale μ = (1 − (Δt/τ)·κ·(P0 − P))^{1/3}, clamped
// to [0.98, 1.02]. Returns μ; a neighbor-list rebuild is needed when μ != 1.
double berendsen_barostat(State& state, double p_now, double p0, double tau_p, double dt_ps,
                          double compressibility);

} // namespace halomd
