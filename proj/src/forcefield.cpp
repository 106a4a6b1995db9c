#include "halomd/forcefield.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "halomd/units.hpp"

namespace halomd {

namespace {

constexpr double kOverlapDistance = 1e-4; // nm
constexpr double kMinSinTheta = 1e-9;

template <typename T>
struct ScaledState {
    std::vector<Vec3T<T>> pos;
    Vec3T<T> lengths;
    std::array<bool, 3> periodic;

    explicit ScaledState(const State& state)
        : lengths(to_vec<T>(state.box.lengths)), periodic(state.box.periodic) {
        pos.reserve(state.positions.size());
        for (const auto& r : state.positions) pos.push_back(to_vec<T>(r));
    }

    Vec3T<T> min_image(Vec3T<T> dr) const {
        for (int a = 0; a < 3; ++a)
            if (periodic[a] && lengths[a] > T(0))
                dr[a] -= lengths[a] * std::nearbyint(dr[a] / lengths[a]);
        return dr;
    }
};

template <typename T>
void add_forces(State& state, const std::vector<Vec3T<T>>& buf) {
    for (int i = 0; i < state.n_atoms(); ++i) {
        state.forces[i].x += static_cast<double>(buf[i].x);
        state.forces[i].y += static_cast<double>(buf[i].y);
        state.forces[i].z += static_cast<double>(buf[i].z);
    }
}

template <typename T>
double bonded_impl(State& state, const Topology& topo, ForceDiagnostics* diag) {
    const ScaledState<T> ts(state);
    std::vector<Vec3T<T>> f(state.n_atoms());
    T energy = T(0);
    T virial = T(0);
    int collinear = 0;

    for (const auto& b : topo.bonds) {
        const Vec3T<T> dr = ts.min_image(ts.pos[b.j] - ts.pos[b.i]);
        const T r = norm(dr);
        const T dev = r - T(b.r0);
        energy += T(0.5) * T(b.k_b) * dev * dev;
        const T dE_dr = T(b.k_b) * dev;
        const Vec3T<T> fj = dr * (-dE_dr / r);
        f[b.j] += fj;
        f[b.i] -= fj;
        virial += dot(dr, fj);
    }

    for (const auto& a : topo.angles) {
        const Vec3T<T> u = ts.min_image(ts.pos[a.i] - ts.pos[a.j]);
        const Vec3T<T> v = ts.min_image(ts.pos[a.k] - ts.pos[a.j]);
        const T nu = norm(u), nv = norm(v);
        T cos_t = dot(u, v) / (nu * nv);
        cos_t = std::clamp(cos_t, T(-1), T(1));
        T sin_t = std::sqrt(T(1) - cos_t * cos_t);
        if (sin_t < T(kMinSinTheta)) {
            sin_t = T(kMinSinTheta);
            ++collinear;
        }
        const T theta = std::acos(cos_t);
        const T dev = theta - T(a.theta0);
        energy += T(0.5) * T(a.k_a) * dev * dev;
        const T dE_dtheta = T(a.k_a) * dev;
        // dθ/du = −(v/nv − cosθ·û)/(nu·sinθ)
        const Vec3T<T> dtheta_du = (v * (T(1) / nv) - u * (cos_t / nu)) * (T(-1) / (nu * sin_t));
        const Vec3T<T> dtheta_dv = (u * (T(1) / nu) - v * (cos_t / nv)) * (T(-1) / (nv * sin_t));
        const Vec3T<T> fi = dtheta_du * (-dE_dtheta);
        const Vec3T<T> fk = dtheta_dv * (-dE_dtheta);
        f[a.i] += fi;
        f[a.k] += fk;
        f[a.j] -= fi + fk;
        virial += dot(u, fi) + dot(v, fk);
    }

    for (const auto& d : topo.dihedrals) {
        const Vec3T<T> b1 = ts.min_image(ts.pos[d.j] - ts.pos[d.i]);
        const Vec3T<T> b2 = ts.min_image(ts.pos[d.k] - ts.pos[d.j]);
        const Vec3T<T> b3 = ts.min_image(ts.pos[d.l] - ts.pos[d.k]);
        const Vec3T<T> n1 = cross(b1, b2);
        const Vec3T<T> n2 = cross(b2, b3);
        const T nb2 = norm(b2);
        const T n1sq = std::max(norm2(n1), T(1e-12));
        const T n2sq = std::max(norm2(n2), T(1e-12));
        const T phi = std::atan2(dot(cross(n1, n2), b2) / nb2, dot(n1, n2));
        const T arg = T(d.multiplicity) * phi - T(d.phase);
        energy += T(d.k_d) * (T(1) + std::cos(arg));
        const T dE_dphi = -T(d.k_d) * T(d.multiplicity) * std::sin(arg);

        const Vec3T<T> dphi_dri = n1 * (-nb2 / n1sq);
        const Vec3T<T> dphi_drl = n2 * (nb2 / n2sq);
        const T t1 = dot(b1, b2) / (nb2 * nb2);
        const T t3 = dot(b3, b2) / (nb2 * nb2);
        const Vec3T<T> dphi_drj = dphi_dri * (t1 - T(1)) - dphi_drl * t3;
        const Vec3T<T> dphi_drk = dphi_drl * (t3 - T(1)) - dphi_dri * t1;

        const Vec3T<T> fi = dphi_dri * (-dE_dphi);
        const Vec3T<T> fj = dphi_drj * (-dE_dphi);
        const Vec3T<T> fk = dphi_drk * (-dE_dphi);
        const Vec3T<T> fl = dphi_drl * (-dE_dphi);
        f[d.i] += fi;
        f[d.j] += fj;
        f[d.k] += fk;
        f[d.l] += fl;
        // anchored at atom i: positions 0, b1, b1+b2, b1+b2+b3
        virial += dot(b1, fj) + dot(b1 + b2, fk) + dot(b1 + b2 + b3, fl);
    }

    add_forces(state, f);
    if (diag) {
        diag->collinear_angles += collinear;
        diag->virial += static_cast<double>(virial);
    }
    return static_cast<double>(energy);
}

// Pair kernels share the chunked worker scheme: each worker accumulates into
// its own buffer, buffers are reduced in worker order. Run-to-run bitwise
// deterministic for a fixed worker count.
template <typename T, typename PairKernel>
double pair_loop(State& state, const std::vector<std::pair<int, int>>& pairs, int workers,
                 ForceDiagnostics* diag, PairKernel&& kernel) {
    const ScaledState<T> ts(state);
    const int n = state.n_atoms();
    workers = std::max(1, workers);
    const std::size_t n_pairs = pairs.size();

    struct WorkerResult {
        std::vector<Vec3T<T>> f;
        T energy = T(0);
        T virial = T(0);
        bool overlap = false;
    };
    std::vector<WorkerResult> results(workers);

    auto run_chunk = [&](int w) {
        WorkerResult& res = results[w];
        res.f.assign(n, Vec3T<T>{});
        const std::size_t begin = n_pairs * w / workers;
        const std::size_t end = n_pairs * (w + 1) / workers;
        for (std::size_t k = begin; k < end; ++k) {
            const auto [i, j] = pairs[k];
            const Vec3T<T> dr = ts.min_image(ts.pos[j] - ts.pos[i]);
            const T r2 = norm2(dr);
            if (r2 < T(kOverlapDistance * kOverlapDistance)) {
                res.overlap = true;
                continue;
            }
            // kernel returns dV/dr at r; fj = −dV/dr · r̂
            T dV_dr = T(0);
            const T r = std::sqrt(r2);
            res.energy += kernel(i, j, r, dV_dr);
            if (dV_dr != T(0)) {
                const Vec3T<T> fj = dr * (-dV_dr / r);
                res.f[j] += fj;
                res.f[i] -= fj;
                res.virial += dot(dr, fj);
            }
        }
    };

    if (workers == 1) {
        run_chunk(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (int w = 0; w < workers; ++w) threads.emplace_back(run_chunk, w);
        for (auto& t : threads) t.join();
    }

    T energy = T(0);
    T virial = T(0);
    for (int w = 0; w < workers; ++w) {
        if (results[w].overlap)
            throw std::runtime_error("pair distance below overlap threshold (blow-up)");
        add_forces(state, results[w].f);
        energy += results[w].energy;
        virial += results[w].virial;
    }
    if (diag) diag->virial += static_cast<double>(virial);
    return static_cast<double>(energy);
}

template <typename T>
double lj_impl(State& state, const std::vector<std::pair<int, int>>& pairs, const Topology& topo,
               const LjParams& lj, double rc, ForceDiagnostics* diag, int workers) {
    const T rc_t = T(rc);
    return pair_loop<T>(state, pairs, workers, diag, [&](int i, int j, T r, T& dV_dr) -> T {
        if (r > rc_t) return T(0);
        const int ti = topo.type_of[i], tj = topo.type_of[j];
        const T sig = T(lj.sigma_ij(ti, tj));
        const T eps = T(lj.epsilon_ij(ti, tj));
        if (eps == T(0)) return T(0);
        auto lj_unshifted = [&](T rr) {
            const T sr2 = (sig / rr) * (sig / rr);
            const T sr6 = sr2 * sr2 * sr2;
            return T(4) * eps * (sr6 * sr6 - sr6);
        };
        const T sr2 = (sig / r) * (sig / r);
        const T sr6 = sr2 * sr2 * sr2;
        const T sr12 = sr6 * sr6;
        dV_dr = -T(24) * eps / r * (T(2) * sr12 - sr6);
        return lj_unshifted(r) - lj_unshifted(rc_t);
    });
}

template <typename T>
double coulomb_impl(State& state, const std::vector<std::pair<int, int>>& pairs,
                    const Topology& topo, const CoulombParams& params, ForceDiagnostics* diag,
                    int workers) {
    const T rc = T(params.rc);
    const T f_pre = T(units::coulomb_prefactor);
    if (params.scheme == CoulombScheme::cutoff_shifted) {
        return pair_loop<T>(state, pairs, workers, diag, [&](int i, int j, T r, T& dV_dr) -> T {
            if (r > rc) return T(0);
            const T qq = T(topo.charge[i]) * T(topo.charge[j]);
            if (qq == T(0)) return T(0);
            dV_dr = -f_pre * qq / (r * r);
            return f_pre * qq * (T(1) / r - T(1) / rc);
        });
    }
    const T k_rf = T((params.eps_rf - 1.0) / ((2.0 * params.eps_rf + 1.0) * params.rc * params.rc * params.rc));
    const T c_rf = T(1) / rc + k_rf * rc * rc;
    return pair_loop<T>(state, pairs, workers, diag, [&](int i, int j, T r, T& dV_dr) -> T {
        if (r > rc) return T(0);
        const T qq = T(topo.charge[i]) * T(topo.charge[j]);
        if (qq == T(0)) return T(0);
        dV_dr = f_pre * qq * (-T(1) / (r * r) + T(2) * k_rf * r);
        return f_pre * qq * (T(1) / r + k_rf * r * r - c_rf);
    });
}

} // namespace

double bonded_forces(State& state, const Topology& topo, ForceDiagnostics* diag, Precision prec) {
    return prec == Precision::fp64 ? bonded_impl<double>(state, topo, diag)
                                   : bonded_impl<float>(state, topo, diag);
}

double lj_forces(State& state, const std::vector<std::pair<int, int>>& pairs, const Topology& topo,
                 const LjParams& lj, double rc, ForceDiagnostics* diag, Precision prec,
                 int workers) {
    return prec == Precision::fp64 ? lj_impl<double>(state, pairs, topo, lj, rc, diag, workers)
                                   : lj_impl<float>(state, pairs, topo, lj, rc, diag, workers);
}

double coulomb_forces(State& state, const std::vector<std::pair<int, int>>& pairs,
                      const Topology& topo, const CoulombParams& params, ForceDiagnostics* diag,
                      Precision prec, int workers) {
    return prec == Precision::fp64
               ? coulomb_impl<double>(state, pairs, topo, params, diag, workers)
               : coulomb_impl<float>(state, pairs, topo, params, diag, workers);
}

EnergyReport compute_classical(State& state, const Topology& topo, const NeighborList& nlist,
                               const ForceFieldParams& params, ForceDiagnostics* diag,
                               Precision prec) {
    state.zero_forces();
    EnergyReport report;
    report.bonded = bonded_forces(state, topo, diag, prec);
    report.lj = lj_forces(state, nlist.pairs, topo, params.lj, params.rc, diag, prec,
                          params.workers);
    report.coulomb =
        coulomb_forces(state, nlist.pairs, topo, params.coulomb, diag, prec, params.workers);
    return report;
}

double instantaneous_pressure(const State& state, const Topology& topo, double virial) {
    const auto [ke, temperature] = kinetic_energy_and_temperature(state, topo);
    (void)temperature;
    const double volume = state.box.volume();
    return (2.0 * ke + virial) / (3.0 * volume) * units::pressure_factor;
}

} // namespace halomd
