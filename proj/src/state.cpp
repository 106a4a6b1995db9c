#include "halomd/state.hpp"

#include <stdexcept>

#include "halomd/units.hpp"

namespace halomd {

std::pair<double, double> kinetic_energy_and_temperature(const State& state, const Topology& topo) {
    const int n = state.n_atoms();
    if (n < 2) throw std::invalid_argument("temperature undefined for fewer than 2 atoms");
    double ke = 0.0;
    for (int i = 0; i < n; ++i) {
        ke += 0.5 * topo.mass[i] * norm2(state.velocities[i]);
    }
    const int ndf = 3 * n - 3; // COM motion removed
    const double temperature = 2.0 * ke / (ndf * units::kB);
    return {ke, temperature};
}

} // namespace halomd
