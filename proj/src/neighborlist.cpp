#include "halomd/neighborlist.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace halomd {

namespace {

struct CellGrid {
    std::array<int, 3> n_cells{1, 1, 1};
    std::vector<std::vector<int>> members; // per linear cell index

    int linear(int cx, int cy, int cz) const {
        return (cz * n_cells[1] + cy) * n_cells[0] + cx;
    }
};

CellGrid build_grid(const State& state, double range) {
    CellGrid grid;
    for (int a = 0; a < 3; ++a) {
        const double len = state.box.lengths[a];
        grid.n_cells[a] = std::max(1, static_cast<int>(std::floor(len / range)));
    }
    grid.members.resize(grid.n_cells[0] * grid.n_cells[1] * grid.n_cells[2]);
    for (int i = 0; i < state.n_atoms(); ++i) {
        const Vec3 r = wrap_position(state.positions[i], state.box);
        std::array<int, 3> c{};
        for (int a = 0; a < 3; ++a) {
            c[a] = static_cast<int>(r[a] / state.box.lengths[a] * grid.n_cells[a]);
            c[a] = std::clamp(c[a], 0, grid.n_cells[a] - 1);
        }
        grid.members[grid.linear(c[0], c[1], c[2])].push_back(i);
    }
    return grid;
}

} // namespace

NeighborList build_neighbor_list(const State& state, const Topology& topo, double rc, double skin,
                                 PairListMode mode) {
    const double range = rc + skin;
    for (int a = 0; a < 3; ++a) {
        if (state.box.periodic[a] && range > 0.5 * state.box.lengths[a])
            throw std::invalid_argument("rc+skin exceeds half the box length on axis " +
                                        std::to_string(a));
    }

    NeighborList list;
    list.cutoff = rc;
    list.skin = skin;
    list.mode = mode;
    list.reference_positions = state.positions;
    list.reference_box = state.box;

    const double range2 = range * range;
    const CellGrid grid = build_grid(state, range);
    const int ncx = grid.n_cells[0], ncy = grid.n_cells[1], ncz = grid.n_cells[2];

    // Deduped neighbor-cell offsets handle grids narrower than 3 cells, where
    // several image offsets wrap onto the same cell.
    std::vector<int> neigh;
    for (int cz = 0; cz < ncz; ++cz) {
        for (int cy = 0; cy < ncy; ++cy) {
            for (int cx = 0; cx < ncx; ++cx) {
                const int c = grid.linear(cx, cy, cz);
                if (grid.members[c].empty()) continue;
                neigh.clear();
                for (int dz = -1; dz <= 1; ++dz)
                    for (int dy = -1; dy <= 1; ++dy)
                        for (int dx = -1; dx <= 1; ++dx) {
                            const int nx = ((cx + dx) % ncx + ncx) % ncx;
                            const int ny = ((cy + dy) % ncy + ncy) % ncy;
                            const int nz = ((cz + dz) % ncz + ncz) % ncz;
                            neigh.push_back(grid.linear(nx, ny, nz));
                        }
                std::sort(neigh.begin(), neigh.end());
                neigh.erase(std::unique(neigh.begin(), neigh.end()), neigh.end());

                for (int c2 : neigh) {
                    if (c2 < c) continue;
                    const auto& a_members = grid.members[c];
                    const auto& b_members = grid.members[c2];
                    for (std::size_t ai = 0; ai < a_members.size(); ++ai) {
                        const int i = a_members[ai];
                        const std::size_t b_start = (c2 == c) ? ai + 1 : 0;
                        for (std::size_t bi = b_start; bi < b_members.size(); ++bi) {
                            const int j = b_members[bi];
                            const Vec3 dr =
                                minimum_image(state.positions[j] - state.positions[i], state.box);
                            if (norm2(dr) > range2) continue;
                            const int lo = std::min(i, j), hi = std::max(i, j);
                            if (topo.excluded(lo, hi)) continue;
                            list.pairs.emplace_back(lo, hi);
                        }
                    }
                }
            }
        }
    }

    std::sort(list.pairs.begin(), list.pairs.end());
    if (mode == PairListMode::full) {
        const std::size_t half_count = list.pairs.size();
        list.pairs.reserve(2 * half_count);
        for (std::size_t k = 0; k < half_count; ++k)
            list.pairs.emplace_back(list.pairs[k].second, list.pairs[k].first);
        std::sort(list.pairs.begin(), list.pairs.end());
    }
    return list;
}

bool needs_rebuild(const NeighborList& list, const State& state) {
    if (state.n_atoms() != static_cast<int>(list.reference_positions.size()))
        throw std::invalid_argument("neighbor list built for a different atom count");
    if (!(state.box.lengths == list.reference_box.lengths)) return true;
    const double limit = 0.5 * list.skin;
    const double limit2 = limit * limit;
    for (int i = 0; i < state.n_atoms(); ++i) {
        const Vec3 dr =
            minimum_image(state.positions[i] - list.reference_positions[i], state.box);
        if (norm2(dr) > limit2) return true;
    }
    return false;
}

std::vector<std::pair<int, int>> apply_exclusions(const std::vector<std::pair<int, int>>& pairs,
                                                  const std::vector<std::vector<int>>& exclusions) {
    std::vector<std::pair<int, int>> out;
    out.reserve(pairs.size());
    for (const auto& [i, j] : pairs) {
        const bool excl = i < static_cast<int>(exclusions.size()) &&
                          std::binary_search(exclusions[i].begin(), exclusions[i].end(), j);
        if (!excl) out.emplace_back(i, j);
    }
    return out;
}

std::vector<std::vector<int>> adjacency_from_pairs(int n_atoms,
                                                   const std::vector<std::pair<int, int>>& pairs) {
    std::vector<std::vector<int>> adj(n_atoms);
    for (const auto& [i, j] : pairs) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    for (auto& v : adj) std::sort(v.begin(), v.end());
    return adj;
}

} // namespace halomd
