#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "halomd/state.hpp"

namespace halomd {

struct GroAtom {
    int residue_number = 1;
    std::string residue_name = "MOL";
    std::string atom_name = "X";
};

struct GroFrame {
    std::string title;
    std::vector<GroAtom> atoms;
    State state; // positions, velocities (if present), box
    bool has_velocities = false;
};

struct GroParseError : std::runtime_error {
    int line = 0;
    GroParseError(const std::string& what, int line_);
};

// Fixed-width .gro: %5d%-5s%-5s%5d then x y z as %8.3f and optional
// velocities as %8.4f, final line with three box lengths.
GroFrame read_gro(std::istream& in);
GroFrame read_gro_string(const std::string& text);
GroFrame read_gro_file(const std::string& path);

std::string write_gro(const GroFrame& frame);
void write_gro_file(const std::string& path, const GroFrame& frame);

// Names for synthetic systems: group atoms "P"/residue PRO, solvent "W"/SOL.
GroFrame make_frame(const State& state, const Topology& topo, const std::string& title);

} // namespace halomd
