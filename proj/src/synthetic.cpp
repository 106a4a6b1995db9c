#include "halomd/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "halomd/rng.hpp"
#include "halomd/state.hpp"
#include "halomd/units.hpp"

namespace halomd {

namespace {

// Snake path over an m×m×m lattice: consecutive sites are one spacing apart,
// so chain bonds start near their rest length.
std::vector<std::array<int, 3>> snake_sites(int m, int count) {
    std::vector<std::array<int, 3>> sites;
    sites.reserve(count);
    for (int z = 0; z < m && static_cast<int>(sites.size()) < count; ++z) {
        const bool flip_y = (z % 2) != 0;
        for (int yy = 0; yy < m && static_cast<int>(sites.size()) < count; ++yy) {
            const int y = flip_y ? m - 1 - yy : yy;
            const bool flip_x = (yy % 2) != 0;
            for (int xx = 0; xx < m && static_cast<int>(sites.size()) < count; ++xx) {
                const int x = flip_x ? m - 1 - xx : xx;
                sites.push_back({x, y, z});
            }
        }
    }
    return sites;
}

} // namespace

std::pair<Topology, State> generate_synthetic_system(const SyntheticParams& p) {
    if (p.n_atoms < 2) throw std::invalid_argument("n_atoms must be >= 2");
    if (p.density <= 0.0) throw std::invalid_argument("density must be positive");
    if (p.fraction_grouped < 0.0 || p.fraction_grouped > 1.0)
        throw std::invalid_argument("fraction_grouped must be in [0, 1]");

    const int n = p.n_atoms;
    const double box_len = std::cbrt(n / p.density);
    const int m = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n))));
    const double spacing = box_len / m;

    const double sigma_max = std::max(p.sigma_protein, p.sigma_solvent);
    if (spacing < 0.8 * sigma_max)
        throw std::runtime_error("density too high: lattice spacing " + std::to_string(spacing) +
                                 " nm < 0.8 sigma");

    const int n_group = static_cast<int>(std::ceil(p.fraction_grouped * n));

    Topology topo;
    topo.n_atoms = n;
    topo.type_of.resize(n);
    topo.mass.resize(n);
    topo.charge.resize(n);
    topo.exclusions.resize(n);

    State state;
    state.resize(n);
    state.box = SimBox(box_len, box_len, box_len);

    Rng rng(p.seed);
    const auto sites = snake_sites(m, n);

    for (int i = 0; i < n; ++i) {
        const bool grouped = i < n_group;
        topo.type_of[i] = grouped ? 0 : 1;
        topo.mass[i] = grouped ? p.mass_protein : p.mass_solvent;
        const double jitter = (grouped ? 0.05 : 0.10) * spacing;
        Vec3 r;
        for (int a = 0; a < 3; ++a)
            r[a] = (sites[i][a] + 0.5) * spacing + rng.uniform(-jitter, jitter);
        state.positions[i] = wrap_position(r, state.box);
    }

    // alternating charges, trailing atom neutralized when the count is odd
    auto assign_charges = [&topo](int begin, int end, double q) {
        const int count = end - begin;
        for (int i = begin; i < end; ++i) topo.charge[i] = (i - begin) % 2 == 0 ? q : -q;
        if (count % 2 != 0) topo.charge[end - 1] = 0.0;
    };
    assign_charges(0, n_group, p.charge_protein);
    assign_charges(n_group, n, p.charge_solvent);

    const double r0 = std::clamp(spacing, 0.12, 0.35);
    for (int i = 0; i + 1 < n_group; ++i) topo.bonds.push_back({i, i + 1, p.bond_k, r0});
    for (int i = 0; i + 2 < n_group; ++i)
        topo.angles.push_back({i, i + 1, i + 2, p.angle_k, p.angle_theta0});
    for (int i = 0; i + 3 < n_group; ++i)
        topo.dihedrals.push_back(
            {i, i + 1, i + 2, i + 3, p.dihedral_k, p.dihedral_mult, p.dihedral_phase});

    // 1-2 and 1-3 exclusions along the chain
    for (const auto& b : topo.bonds) topo.add_exclusion(b.i, b.j);
    for (const auto& a : topo.angles) topo.add_exclusion(a.i, a.k);

    std::vector<int> group_members(n_group);
    for (int i = 0; i < n_group; ++i) group_members[i] = i;
    topo.groups["protein"] = std::move(group_members);
    std::vector<int> solvent_members(n - n_group);
    for (int i = n_group; i < n; ++i) solvent_members[i - n_group] = i;
    topo.groups["solvent"] = std::move(solvent_members);

    // Maxwell-Boltzmann velocities, COM momentum removed, rescaled to T
    if (p.temperature > 0.0) {
        for (int i = 0; i < n; ++i) {
            const double s = std::sqrt(units::kB * p.temperature / topo.mass[i]);
            state.velocities[i] = {s * rng.gaussian(), s * rng.gaussian(), s * rng.gaussian()};
        }
        Vec3 momentum{};
        double total_mass = 0.0;
        for (int i = 0; i < n; ++i) {
            momentum += state.velocities[i] * topo.mass[i];
            total_mass += topo.mass[i];
        }
        const Vec3 v_com = momentum / total_mass;
        for (auto& v : state.velocities) v -= v_com;
        const auto [ke, t_now] = kinetic_energy_and_temperature(state, topo);
        if (t_now > 0.0) {
            const double lambda = std::sqrt(p.temperature / t_now);
            for (auto& v : state.velocities) v *= lambda;
        }
    }

    topo.validate();
    return {std::move(topo), std::move(state)};
}

} // namespace halomd
