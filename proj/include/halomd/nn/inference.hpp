#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "halomd/box.hpp"
#include "halomd/forcefield.hpp"
#include "halomd/nn/model.hpp"
#include "halomd/vec3.hpp"

namespace halomd::nn {

// Atom environment handed to a model: local atoms (owned + ghost) and the
// full directed neighbor graph at rc_model in CSR form, with image-corrected
// displacement vectors. Energies come out for owned atoms only; forces for
// every input atom so ghost contributions can be routed back to their owners.
struct NnInput {
    std::vector<Vec3> positions; // local frame, reference only
    std::vector<int> types;
    std::vector<int> global_index;
    std::vector<char> is_ghost;

    // directed edges i -> j, neighbors of i sorted by (global_index, image)
    std::vector<int> edge_offset;   // size n_atoms + 1
    std::vector<int> edge_neighbor; // local index of j
    std::vector<Vec3> edge_dr;      // r_j − r_i, image-corrected

    // radius around every owned atom guaranteed covered by the input;
    // infinite for fully periodic single-domain inputs
    double coverage_radius = std::numeric_limits<double>::infinity();
    bool skip_coverage_check = false; // test hook for the negative control

    int n_atoms() const { return static_cast<int>(types.size()); }
    int n_owned() const;
    void check() const;
};

struct NnOutput {
    std::vector<double> per_atom_energy; // owned atoms carry energies, ghosts 0
    std::vector<Vec3> forces;            // all input atoms
    double energy = 0.0;                 // Σ owned per-atom energies
    double virial = 0.0;
};

// Analytic cost accounting for the scaling studies: multiply-add tallies for
// every MLP/descriptor application and the bytes of stored forward
// activations a backward pass needs.
struct NnCounters {
    std::uint64_t flops = 0;
    std::uint64_t peak_activation_bytes = 0;
    std::uint64_t inferences = 0;

    void merge(const NnCounters& other) {
        flops += other.flops;
        peak_activation_bytes = std::max(peak_activation_bytes, other.peak_activation_bytes);
        inferences += other.inferences;
    }
};

// Full periodic environment for a set of atoms (the single-domain and
// gather-to-root path). Neighbor search is cell-list accelerated.
NnInput build_input_periodic(const std::vector<Vec3>& positions, const std::vector<int>& types,
                             const std::vector<int>& global_index, const SimBox& box,
                             double rc_model);

// Energies and forces with the hand-written reverse-mode backward pass.
// Throws std::runtime_error when coverage_radius < receptive radius.
NnOutput evaluate(const NnModel& model, const NnInput& input,
                  Precision prec = Precision::fp64, NnCounters* counters = nullptr);

// Per-atom descriptor features (rotation- and permutation-invariant).
std::vector<std::vector<double>> descriptors(const NnModel& model, const NnInput& input);

// Switch s(r): 1 below 0.9·rc, smooth cosine taper on (0.9·rc, rc], 0 beyond.
double switch_value(double r, double rc);
double switch_derivative(double r, double rc);

} // namespace halomd::nn
