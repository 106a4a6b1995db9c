#pragma once

#include <utility>
#include <vector>

#include "halomd/state.hpp"
#include "halomd/topology.hpp"

namespace halomd {

enum class PairListMode { half, full };

// Verlet pair list with skin buffer. Pairs are exclusion-filtered and sorted
// lexicographically; reference positions snapshot the build time for the
// displacement rebuild criterion.
struct NeighborList {
    double cutoff = 0.0; // nm
    double skin = 0.0;   // nm
    PairListMode mode = PairListMode::half;
    std::vector<std::pair<int, int>> pairs;
    std::vector<Vec3> reference_positions;
    SimBox reference_box;
};

// Cell-list accelerated build. Pair set equals the O(N²) minimum-image set
// {(i,j): d_ij <= rc+skin, j not excluded}. Throws std::invalid_argument when
// rc+skin > min(box)/2 on a periodic axis.
NeighborList build_neighbor_list(const State& state, const Topology& topo, double rc, double skin,
                                 PairListMode mode = PairListMode::half);

// true iff any atom moved more than skin/2 (minimum image) since the build.
bool needs_rebuild(const NeighborList& list, const State& state);

// Drops excluded pairs, preserving order of survivors.
std::vector<std::pair<int, int>> apply_exclusions(const std::vector<std::pair<int, int>>& pairs,
                                                  const std::vector<std::vector<int>>& exclusions);

// Per-atom adjacency from a half list (both directions), each sorted.
std::vector<std::vector<int>> adjacency_from_pairs(int n_atoms,
                                                   const std::vector<std::pair<int, int>>& pairs);

} // namespace halomd
