#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "halomd/box.hpp"
#include "halomd/topology.hpp"
#include "halomd/vec3.hpp"

namespace halomd {

// Positions, velocities and forces of all atoms plus the periodic box.
struct State {
    std::vector<Vec3> positions;  // nm
    std::vector<Vec3> velocities; // nm/ps
    std::vector<Vec3> forces;     // kJ·mol⁻¹·nm⁻¹
    SimBox box;
    std::int64_t step = 0;
    double time = 0.0; // ps

    int n_atoms() const { return static_cast<int>(positions.size()); }
    void resize(int n) {
        positions.resize(n);
        velocities.resize(n);
        forces.resize(n);
    }
    void zero_forces() {
        for (auto& f : forces) f = Vec3{};
    }
    void wrap_all() {
        for (auto& r : positions) r = wrap_position(r, box);
    }
};

struct EnergyReport {
    double bonded = 0.0;
    double lj = 0.0;
    double coulomb = 0.0;
    double nn = 0.0;
    double kinetic = 0.0;
    double temperature = 0.0;

    double total_potential() const { return bonded + lj + coulomb + nn; }
    double total() const { return total_potential() + kinetic; }
};

// KE = ½ Σ m v²; T = 2·KE / (Ndf·kB) with Ndf = 3N − 3 (COM motion removed).
// Throws std::invalid_argument for n_atoms < 2.
std::pair<double, double> kinetic_energy_and_temperature(const State& state, const Topology& topo);

} // namespace halomd
