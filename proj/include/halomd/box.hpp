#pragma once

#include <array>
#include <cmath>

#include "halomd/vec3.hpp"

namespace halomd {

// Orthorhombic simulation box, optionally periodic per axis.
struct SimBox {
    Vec3 lengths{0.0, 0.0, 0.0};
    std::array<bool, 3> periodic{true, true, true};

    SimBox() = default;
    explicit SimBox(double lx, double ly, double lz, bool pbc = true)
        : lengths{lx, ly, lz}, periodic{pbc, pbc, pbc} {}

    double volume() const { return lengths.x * lengths.y * lengths.z; }
    double min_length() const { return std::min(lengths.x, std::min(lengths.y, lengths.z)); }
};

// Minimum-image displacement. |component| <= L/2 on periodic axes.
inline Vec3 minimum_image(Vec3 dr, const SimBox& box) {
    for (int a = 0; a < 3; ++a) {
        if (box.periodic[a] && box.lengths[a] > 0.0) {
            dr[a] -= box.lengths[a] * std::nearbyint(dr[a] / box.lengths[a]);
        }
    }
    return dr;
}

// Wrap a position into [0, L) on periodic axes.
inline Vec3 wrap_position(Vec3 r, const SimBox& box) {
    for (int a = 0; a < 3; ++a) {
        if (box.periodic[a] && box.lengths[a] > 0.0) {
            r[a] -= box.lengths[a] * std::floor(r[a] / box.lengths[a]);
            if (r[a] >= box.lengths[a]) r[a] = 0.0; // floor rounding at the upper edge
        }
    }
    return r;
}

} // namespace halomd
