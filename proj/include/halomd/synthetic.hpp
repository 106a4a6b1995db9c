#pragma once

#include <cstdint>
#include <utility>

#include "halomd/state.hpp"
#include "halomd/topology.hpp"

namespace halomd {

// Parameters of the synthetic protein-in-solvent stand-in. A contiguous
// "protein" chain (bonds/angles/dihedrals, group "protein") is embedded in
// an LJ+charge "solvent" fluid on a jittered lattice.
struct SyntheticParams {
    int n_atoms = 582;
    double density = 33.4;        // nm⁻³
    double fraction_grouped = 0.35;
    std::uint64_t seed = 1;
    double temperature = 300.0;   // K, Maxwell-Boltzmann draw

    // chain force-field constants
    double bond_k = 2000.0;   // kJ·mol⁻¹·nm⁻²
    double angle_k = 100.0;   // kJ·mol⁻¹·rad⁻²
    double angle_theta0 = 2.0; // rad
    double dihedral_k = 1.0;  // kJ·mol⁻¹
    int dihedral_mult = 3;
    double dihedral_phase = 0.0;

    // per-type LJ and charge; type 0 = protein analog, type 1 = solvent
    double sigma_protein = 0.33;
    double eps_protein = 0.40;
    double sigma_solvent = 0.30;
    double eps_solvent = 0.50;
    double mass_protein = 12.0;
    double mass_solvent = 18.0;
    double charge_protein = 0.20; // alternating ±
    double charge_solvent = 0.30; // alternating ±
};

// Deterministic for a fixed seed. Throws std::invalid_argument on bad
// parameters and std::runtime_error when the lattice spacing is below
// 0.8·σ (overlap).
std::pair<Topology, State> generate_synthetic_system(const SyntheticParams& params);

} // namespace halomd
