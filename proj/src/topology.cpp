#include "halomd/topology.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace halomd {

bool Topology::excluded(int i, int j) const {
    if (i < 0 || i >= static_cast<int>(exclusions.size())) return false;
    const auto& ex = exclusions[i];
    return std::binary_search(ex.begin(), ex.end(), j);
}

void Topology::add_exclusion(int i, int j) {
    if (i == j) return;
    if (exclusions.size() != static_cast<std::size_t>(n_atoms)) exclusions.resize(n_atoms);
    auto insert_sorted = [](std::vector<int>& v, int value) {
        auto it = std::lower_bound(v.begin(), v.end(), value);
        if (it == v.end() || *it != value) v.insert(it, value);
    };
    insert_sorted(exclusions[i], j);
    insert_sorted(exclusions[j], i);
}

void Topology::validate() const {
    auto check_index = [this](int idx, const char* what) {
        if (idx < 0 || idx >= n_atoms)
            throw std::invalid_argument(std::string(what) + " index " + std::to_string(idx) +
                                        " out of range");
    };
    if (static_cast<int>(type_of.size()) != n_atoms || static_cast<int>(mass.size()) != n_atoms ||
        static_cast<int>(charge.size()) != n_atoms)
        throw std::invalid_argument("per-atom array length != n_atoms");
    for (const auto& b : bonds) {
        check_index(b.i, "bond");
        check_index(b.j, "bond");
        if (b.i == b.j) throw std::invalid_argument("bond with repeated atom");
    }
    for (const auto& a : angles) {
        check_index(a.i, "angle");
        check_index(a.j, "angle");
        check_index(a.k, "angle");
        if (a.i == a.j || a.j == a.k || a.i == a.k)
            throw std::invalid_argument("angle with repeated atom");
    }
    for (const auto& d : dihedrals) {
        check_index(d.i, "dihedral");
        check_index(d.j, "dihedral");
        check_index(d.k, "dihedral");
        check_index(d.l, "dihedral");
        if (d.i == d.j || d.i == d.k || d.i == d.l || d.j == d.k || d.j == d.l || d.k == d.l)
            throw std::invalid_argument("dihedral with repeated atom");
    }
    for (int i = 0; i < static_cast<int>(exclusions.size()); ++i) {
        if (!std::is_sorted(exclusions[i].begin(), exclusions[i].end()))
            throw std::invalid_argument("exclusion list not sorted");
        for (int j : exclusions[i]) {
            check_index(j, "exclusion");
            if (!excluded(j, i)) throw std::invalid_argument("exclusion relation not symmetric");
        }
    }
    for (const auto& [name, members] : groups) {
        if (!std::is_sorted(members.begin(), members.end()) ||
            std::adjacent_find(members.begin(), members.end()) != members.end())
            throw std::invalid_argument("group '" + name + "' not sorted/duplicate-free");
        for (int idx : members) check_index(idx, "group");
    }
}

} // namespace halomd
