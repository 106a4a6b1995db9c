#pragma once

#include <vector>

#include "halomd/neighborlist.hpp"
#include "halomd/state.hpp"
#include "halomd/topology.hpp"

namespace halomd {

enum class Precision { fp32, fp64 };

enum class CoulombScheme { cutoff_shifted, reaction_field };

// Per-type LJ parameters, combined with Lorentz-Berthelot rules.
struct LjParams {
    std::vector<double> sigma;   // nm, per type
    std::vector<double> epsilon; // kJ/mol, per type

    int n_types() const { return static_cast<int>(sigma.size()); }
    double sigma_ij(int ti, int tj) const { return 0.5 * (sigma[ti] + sigma[tj]); }
    double epsilon_ij(int ti, int tj) const { return std::sqrt(epsilon[ti] * epsilon[tj]); }
};

struct CoulombParams {
    CoulombScheme scheme = CoulombScheme::cutoff_shifted;
    double rc = 0.7;      // nm
    double eps_rf = 78.0; // reaction-field dielectric, used when scheme = reaction_field
};

struct ForceFieldParams {
    LjParams lj;
    CoulombParams coulomb;
    double rc = 0.7; // nm, LJ cutoff
    int workers = 1; // pair-loop workers; reduction order is fixed regardless
};

// Diagnostics of one classical force evaluation.
struct ForceDiagnostics {
    int collinear_angles = 0; // angles evaluated with the clamped derivative
    double virial = 0.0;      // Σ r·F over interaction terms, kJ/mol
};

// Each term accumulates forces into state.forces and returns its energy.
// Analytic gradients; Σ forces over a term's atoms is zero.
double bonded_forces(State& state, const Topology& topo, ForceDiagnostics* diag = nullptr,
                     Precision prec = Precision::fp64);

// Potential-shifted LJ: V(r) = 4ε[(σ/r)¹²−(σ/r)⁶] − V(rc). Throws
// std::runtime_error on overlap (r < 1e-4 nm).
double lj_forces(State& state, const std::vector<std::pair<int, int>>& pairs,
                 const Topology& topo, const LjParams& lj, double rc,
                 ForceDiagnostics* diag = nullptr, Precision prec = Precision::fp64,
                 int workers = 1);

// cutoff_shifted: V = f·qq·(1/r − 1/rc); reaction_field: V = f·qq·(1/r + k·r² − c).
double coulomb_forces(State& state, const std::vector<std::pair<int, int>>& pairs,
                      const Topology& topo, const CoulombParams& params,
                      ForceDiagnostics* diag = nullptr, Precision prec = Precision::fp64,
                      int workers = 1);

// Zeroes forces, accumulates bonded + LJ + Coulomb, fills the report.
EnergyReport compute_classical(State& state, const Topology& topo, const NeighborList& nlist,
                               const ForceFieldParams& params, ForceDiagnostics* diag = nullptr,
                               Precision prec = Precision::fp64);

// Instantaneous isotropic pressure in bar from kinetic energy and the virial.
double instantaneous_pressure(const State& state, const Topology& topo, double virial);

} // namespace halomd
