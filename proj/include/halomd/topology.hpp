#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace halomd {

struct Bond {
    int i, j;
    double k_b;  // kJ·mol⁻¹·nm⁻²
    double r0;   // nm
};

struct Angle {
    int i, j, k; // j is the vertex
    double k_a;  // kJ·mol⁻¹·rad⁻²
    double theta0;
};

struct Dihedral {
    int i, j, k, l;
    double k_d; // kJ·mol⁻¹
    int multiplicity;
    double phase; // rad
};

// Connectivity, per-atom parameters, exclusions and named atom groups.
struct Topology {
    int n_atoms = 0;
    std::vector<int> type_of;
    std::vector<double> mass;   // amu
    std::vector<double> charge; // e
    std::vector<Bond> bonds;
    std::vector<Angle> angles;
    std::vector<Dihedral> dihedrals;
    // exclusions[i] is sorted and symmetric: j in excl(i) <=> i in excl(j)
    std::vector<std::vector<int>> exclusions;
    // named groups, each sorted and duplicate-free
    std::map<std::string, std::vector<int>> groups;

    bool excluded(int i, int j) const;
    void add_exclusion(int i, int j);
    // Checks index ranges, exclusion symmetry and group sortedness.
    void validate() const;
};

} // namespace halomd
