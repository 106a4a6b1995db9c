#include "halomd/nn/inference.hpp"

#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>

#include "halomd/neighborlist.hpp"

namespace halomd::nn {

int NnInput::n_owned() const {
    int n = 0;
    for (char g : is_ghost)
        if (!g) ++n;
    return n;
}

void NnInput::check() const {
    const std::size_t n = types.size();
    if (positions.size() != n || global_index.size() != n || is_ghost.size() != n)
        throw std::invalid_argument("NnInput arrays disagree on atom count");
    if (edge_offset.size() != n + 1)
        throw std::invalid_argument("NnInput edge_offset has wrong size");
    if (edge_neighbor.size() != edge_dr.size())
        throw std::invalid_argument("NnInput edge arrays disagree");
    if (!edge_offset.empty() && edge_offset.back() != static_cast<int>(edge_neighbor.size()))
        throw std::invalid_argument("NnInput CSR offsets inconsistent");
    for (int j : edge_neighbor)
        if (j < 0 || j >= static_cast<int>(n))
            throw std::invalid_argument("NnInput edge neighbor out of range");
}

double switch_value(double r, double rc) {
    const double onset = 0.9 * rc;
    if (r <= onset) return 1.0;
    if (r >= rc) return 0.0;
    return 0.5 * (std::cos(M_PI * (r - onset) / (0.1 * rc)) + 1.0);
}

double switch_derivative(double r, double rc) {
    const double onset = 0.9 * rc;
    if (r <= onset || r >= rc) return 0.0;
    return -0.5 * std::sin(M_PI * (r - onset) / (0.1 * rc)) * M_PI / (0.1 * rc);
}

namespace {

template <typename T>
T switch_value_t(T r, T rc) {
    const T onset = T(0.9) * rc;
    if (r <= onset) return T(1);
    if (r >= rc) return T(0);
    return T(0.5) * (std::cos(T(M_PI) * (r - onset) / (T(0.1) * rc)) + T(1));
}

template <typename T>
T switch_derivative_t(T r, T rc) {
    const T onset = T(0.9) * rc;
    if (r <= onset || r >= rc) return T(0);
    return T(-0.5) * std::sin(T(M_PI) * (r - onset) / (T(0.1) * rc)) * T(M_PI) / (T(0.1) * rc);
}

// Weight-cast MLP with flat activation storage: acts holds the layer inputs
// followed by every layer output, Σ sizes values in total.
template <typename T>
struct MlpT {
    std::vector<int> sizes;
    std::vector<std::vector<T>> w, b;
    std::vector<int> act_offset; // per level, into the flat activation buffer
    int act_size = 0;

    explicit MlpT(const Mlp& src) : sizes(src.sizes) {
        for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
            w.emplace_back(src.weights[l].begin(), src.weights[l].end());
            b.emplace_back(src.biases[l].begin(), src.biases[l].end());
        }
        act_offset.resize(sizes.size());
        for (std::size_t lvl = 0; lvl < sizes.size(); ++lvl) {
            act_offset[lvl] = act_size;
            act_size += sizes[lvl];
        }
    }

    int n_layers() const { return static_cast<int>(sizes.size()) - 1; }

    void forward(const T* input, T* acts) const {
        std::memcpy(acts, input, sizeof(T) * sizes[0]);
        for (int l = 0; l < n_layers(); ++l) {
            const T* x = acts + act_offset[l];
            T* y = acts + act_offset[l + 1];
            const int in = sizes[l], out = sizes[l + 1];
            const bool last = l == n_layers() - 1;
            for (int o = 0; o < out; ++o) {
                T z = b[l][o];
                const T* row = w[l].data() + static_cast<std::size_t>(o) * in;
                for (int i = 0; i < in; ++i) z += row[i] * x[i];
                y[o] = last ? z : std::tanh(z);
            }
        }
    }

    const T* output(const T* acts) const { return acts + act_offset[n_layers()]; }

    // din is overwritten with the input adjoint; grads (optional) accumulates
    // ∂E/∂W and ∂E/∂b in a same-shaped Mlp.
    void backward(const T* dout, const T* acts, T* din, Mlp* grads = nullptr) const {
        const int nl = n_layers();
        std::vector<T> cur(dout, dout + sizes[nl]);
        std::vector<T> next;
        for (int l = nl - 1; l >= 0; --l) {
            const int in = sizes[l], out = sizes[l + 1];
            const T* x = acts + act_offset[l];
            const T* y = acts + act_offset[l + 1];
            const bool last = l == nl - 1;
            // dz in place
            if (!last)
                for (int o = 0; o < out; ++o) cur[o] *= (T(1) - y[o] * y[o]);
            if (grads) {
                auto& gw = grads->weights[l];
                auto& gb = grads->biases[l];
                for (int o = 0; o < out; ++o) {
                    const double dz = static_cast<double>(cur[o]);
                    gb[o] += dz;
                    double* grow = gw.data() + static_cast<std::size_t>(o) * in;
                    for (int i = 0; i < in; ++i) grow[i] += dz * static_cast<double>(x[i]);
                }
            }
            next.assign(in, T(0));
            for (int o = 0; o < out; ++o) {
                const T dz = cur[o];
                const T* row = w[l].data() + static_cast<std::size_t>(o) * in;
                for (int i = 0; i < in; ++i) next[i] += row[i] * dz;
            }
            cur.swap(next);
        }
        std::memcpy(din, cur.data(), sizeof(T) * sizes[0]);
    }

    std::uint64_t forward_flops() const {
        std::uint64_t f = 0;
        for (int l = 0; l < n_layers(); ++l)
            f += 2ull * sizes[l] * sizes[l + 1] + 4ull * sizes[l + 1];
        return f;
    }
    std::uint64_t backward_flops() const { return 2 * forward_flops(); }
};

template <typename T>
struct BasisT {
    std::vector<T> centers;
    T inv_two_width sq{};
    T width{};
    T rc{};

    BasisT(const RadialBasis& basis, double rc_model) {
        centers.assign(basis.centers.begin(), basis.centers.end());
        width = T(basis.width);
        rc = T(rc_model);
    }

    // b_k(r) = exp(−(r−μ_k)²/(2δ²))·s(r)
    void values(T r, T s, T* out) const {
        const T inv = T(1) / (T(2) * width * width);
        for (std::size_t k = 0; k < centers.size(); ++k) {
            const T d = r - centers[k];
            out[k] = std::exp(-d * d * inv) * s;
        }
    }

    // db_k/dr given r, s(r), s'(r)
    void derivatives(T r, T s, T ds, T* out) const {
        const T inv = T(1) / (T(2) * width * width);
        const T inv_w2 = T(1) / (width * width);
        for (std::size_t k = 0; k < centers.size(); ++k) {
            const T d = r - centers[k];
            const T g = std::exp(-d * d * inv);
            out[k] = -d * inv_w2 * g * s + g * ds;
        }
    }
};

template <typename T>
NnOutput evaluate_impl(const NnModel& model, const NnInput& input, NnCounters* counters,
                       NnModel* weight_grads) {
    input.check();
    model.validate();
    const double needed = model.receptive_radius();
    if (!input.skip_coverage_check && input.coverage_radius < needed - 1e-12)
        throw std::runtime_error(
            "receptive-field error: model needs " + std::to_string(needed) +
            " nm of environment but input covers " + std::to_string(input.coverage_radius) +
            " nm; widen the halo to L×rc or gather to one rank");

    const int n = input.n_atoms();
    const int ne = static_cast<int>(input.edge_neighbor.size());
    const int K = model.basis.size();
    const int H = model.hidden;
    const int nd = model.descriptor_dim();
    const int M = static_cast<int>(model.layers.size());

    NnOutput out;
    out.per_atom_energy.assign(n, 0.0);
    out.forces.assign(n, Vec3{});
    if (n == 0) return out;

    const MlpT<T> embed(model.embedding);
    const MlpT<T> fit(model.fitting);
    std::vector<std::pair<MlpT<T>, MlpT<T>>> layers; // (message, update)
    layers.reserve(M);
    for (const auto& layer : model.layers) layers.emplace_back(layer.message, layer.update);
    const BasisT<T> basis(model.basis, model.rc_model);

    // edge radial quantities
    std::vector<T> edge_r(ne), edge_s(ne);
    std::vector<T> edge_b(static_cast<std::size_t>(ne) * K);
    std::vector<Vec3T<T>> edge_u(ne); // unit vectors i -> j
    for (int e = 0; e < ne; ++e) {
        const Vec3T<T> dr = to_vec<T>(input.edge_dr[e]);
        const T r = norm(dr);
        if (r <= T(0)) throw std::runtime_error("zero-length edge in NN input");
        edge_r[e] = r;
        edge_u[e] = dr / r;
        edge_s[e] = switch_value_t<T>(r, T(model.rc_model));
        basis.values(r, edge_s[e], edge_b.data() + static_cast<std::size_t>(e) * K);
    }

    // descriptors
    std::vector<T> desc(static_cast<std::size_t>(n) * nd, T(0));
    for (int i = 0; i < n; ++i) {
        T* di = desc.data() + static_cast<std::size_t>(i) * nd;
        for (int e = input.edge_offset[i]; e < input.edge_offset[i + 1]; ++e) {
            const int t = input.types[input.edge_neighbor[e]];
            const T* be = edge_b.data() + static_cast<std::size_t>(e) * K;
            T* slot = di + t * K;
            for (int k = 0; k < K; ++k) slot[k] += be[k];
        }
    }

    // forward: embedding, message layers, fitting
    std::vector<T> embed_acts(static_cast<std::size_t>(n) * embed.act_size);
    std::vector<std::vector<T>> h(M + 1,
                                  std::vector<T>(static_cast<std::size_t>(n) * H, T(0)));
    for (int i = 0; i < n; ++i) {
        T* acts = embed_acts.data() + static_cast<std::size_t>(i) * embed.act_size;
        embed.forward(desc.data() + static_cast<std::size_t>(i) * nd, acts);
        std::memcpy(h[0].data() + static_cast<std::size_t>(i) * H, embed.output(acts),
                    sizeof(T) * H);
    }

    std::vector<std::vector<T>> msg_acts(M);
    std::vector<std::vector<T>> upd_acts(M);
    std::vector<std::vector<T>> msum(M);
    std::vector<T> msg_in(H + K);
    std::vector<T> upd_in(2 * H);
    for (int m = 0; m < M; ++m) {
        const auto& [msg, upd] = layers[m];
        msg_acts[m].resize(static_cast<std::size_t>(ne) * msg.act_size);
        upd_acts[m].resize(static_cast<std::size_t>(n) * upd.act_size);
        msum[m].assign(static_cast<std::size_t>(n) * H, T(0));
        const T* h_prev = h[m].data();
        T* h_next = h[m + 1].data();
        for (int i = 0; i < n; ++i) {
            T* msum_i = msum[m].data() + static_cast<std::size_t>(i) * H;
            for (int e = input.edge_offset[i]; e < input.edge_offset[i + 1]; ++e) {
                const int j = input.edge_neighbor[e];
                std::memcpy(msg_in.data(), h_prev + static_cast<std::size_t>(j) * H,
                            sizeof(T) * H);
                std::memcpy(msg_in.data() + H, edge_b.data() + static_cast<std::size_t>(e) * K,
                            sizeof(T) * K);
                T* acts = msg_acts[m].data() + static_cast<std::size_t>(e) * msg.act_size;
                msg.forward(msg_in.data(), acts);
                const T* mo = msg.output(acts);
                const T s = edge_s[e];
                for (int c = 0; c < H; ++c) msum_i[c] += s * mo[c];
            }
            std::memcpy(upd_in.data(), h_prev + static_cast<std::size_t>(i) * H, sizeof(T) * H);
            std::memcpy(upd_in.data() + H, msum_i, sizeof(T) * H);
            T* uacts = upd_acts[m].data() + static_cast<std::size_t>(i) * upd.act_size;
            upd.forward(upd_in.data(), uacts);
            const T* u = upd.output(uacts);
            const T* hp = h_prev + static_cast<std::size_t>(i) * H;
            T* hn = h_next + static_cast<std::size_t>(i) * H;
            for (int c = 0; c < H; ++c) hn[c] = hp[c] + u[c];
        }
    }

    std::vector<T> fit_acts(static_cast<std::size_t>(n) * fit.act_size, T(0));
    double energy = 0.0;
    for (int i = 0; i < n; ++i) {
        if (input.is_ghost[i]) continue;
        T* acts = fit_acts.data() + static_cast<std::size_t>(i) * fit.act_size;
        fit.forward(h[M].data() + static_cast<std::size_t>(i) * H, acts);
        const double e_i = static_cast<double>(fit.output(acts)[0]);
        out.per_atom_energy[i] = e_i;
        energy += e_i;
    }
    out.energy = energy;

    // backward: adjoint of Σ owned E_i w.r.t. every edge length
    std::vector<T> edge_dEdr(ne, T(0));
    std::vector<T> dh(static_cast<std::size_t>(n) * H, T(0));
    std::vector<T> one(1, T(1));
    std::vector<T> dHin(H);
    for (int i = 0; i < n; ++i) {
        if (input.is_ghost[i]) continue;
        fit.backward(one.data(), fit_acts.data() + static_cast<std::size_t>(i) * fit.act_size,
                     dHin.data(), weight_grads ? &weight_grads->fitting : nullptr);
        T* di = dh.data() + static_cast<std::size_t>(i) * H;
        for (int c = 0; c < H; ++c) di[c] += dHin[c];
    }

    std::vector<T> dh_prev(static_cast<std::size_t>(n) * H);
    std::vector<T> dupd_in(2 * H);
    std::vector<T> dmsg_in(H + K);
    std::vector<T> db_deriv(K);
    for (int m = M - 1; m >= 0; --m) {
        const auto& [msg, upd] = layers[m];
        Mlp* g_msg = weight_grads ? &weight_grads->layers[m].message : nullptr;
        Mlp* g_upd = weight_grads ? &weight_grads->layers[m].update : nullptr;
        std::memcpy(dh_prev.data(), dh.data(), sizeof(T) * dh.size()); // residual path
        for (int i = 0; i < n; ++i) {
            const T* dout = dh.data() + static_cast<std::size_t>(i) * H;
            upd.backward(dout, upd_acts[m].data() + static_cast<std::size_t>(i) * upd.act_size,
                         dupd_in.data(), g_upd);
            T* dpi = dh_prev.data() + static_cast<std::size_t>(i) * H;
            for (int c = 0; c < H; ++c) dpi[c] += dupd_in[c];
            const T* dmsum = dupd_in.data() + H;
            for (int e = input.edge_offset[i]; e < input.edge_offset[i + 1]; ++e) {
                const int j = input.edge_neighbor[e];
                const T* acts = msg_acts[m].data() + static_cast<std::size_t>(e) * msg.act_size;
                const T* mo = msg.output(acts);
                const T s = edge_s[e];
                // adjoint through the s(r)·message product
                T ds_contrib = T(0);
                for (int c = 0; c < H; ++c) ds_contrib += dmsum[c] * mo[c];
                edge_dEdr[e] +=
                    ds_contrib * switch_derivative_t<T>(edge_r[e], T(model.rc_model));
                std::vector<T> dmo(H);
                for (int c = 0; c < H; ++c) dmo[c] = s * dmsum[c];
                msg.backward(dmo.data(), acts, dmsg_in.data(), g_msg);
                T* dpj = dh_prev.data() + static_cast<std::size_t>(j) * H;
                for (int c = 0; c < H; ++c) dpj[c] += dmsg_in[c];
                basis.derivatives(edge_r[e], edge_s[e],
                                  switch_derivative_t<T>(edge_r[e], T(model.rc_model)),
                                  db_deriv.data());
                T dr_acc = T(0);
                for (int k = 0; k < K; ++k) dr_acc += dmsg_in[H + k] * db_deriv[k];
                edge_dEdr[e] += dr_acc;
            }
        }
        dh.swap(dh_prev);
    }

    // embedding and descriptor adjoints
    std::vector<T> ddesc(nd);
    for (int i = 0; i < n; ++i) {
        embed.backward(dh.data() + static_cast<std::size_t>(i) * H,
                       embed_acts.data() + static_cast<std::size_t>(i) * embed.act_size,
                       ddesc.data(), weight_grads ? &weight_grads->embedding : nullptr);
        for (int e = input.edge_offset[i]; e < input.edge_offset[i + 1]; ++e) {
            const int t = input.types[input.edge_neighbor[e]];
            basis.derivatives(edge_r[e], edge_s[e],
                              switch_derivative_t<T>(edge_r[e], T(model.rc_model)),
                              db_deriv.data());
            T dr_acc = T(0);
            for (int k = 0; k < K; ++k) dr_acc += ddesc[t * K + k] * db_deriv[k];
            edge_dEdr[e] += dr_acc;
        }
    }

    // scatter forces along edge directions; F = −∇E
    double virial = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int e = input.edge_offset[i]; e < input.edge_offset[i + 1]; ++e) {
            const int j = input.edge_neighbor[e];
            const T d = edge_dEdr[e];
            if (d == T(0)) continue;
            const Vec3T<T> f = edge_u[e] * d; // −force on j
            out.forces[j] -= Vec3(static_cast<double>(f.x), static_cast<double>(f.y),
                                  static_cast<double>(f.z));
            out.forces[i] += Vec3(static_cast<double>(f.x), static_cast<double>(f.y),
                                  static_cast<double>(f.z));
            virial -= static_cast<double>(d * edge_r[e]);
        }
    }
    out.virial = virial;

    if (counters) {
        NnCounters c;
        const std::uint64_t per_edge_radial = 20 + 10ull * K;
        c.flops += static_cast<std::uint64_t>(ne) * per_edge_radial;
        c.flops += static_cast<std::uint64_t>(n) *
                   (embed.forward_flops() + embed.backward_flops());
        c.flops += static_cast<std::uint64_t>(input.n_owned()) *
                   (fit.forward_flops() + fit.backward_flops());
        for (const auto& [msg, upd] : layers) {
            c.flops += static_cast<std::uint64_t>(ne) *
                       (msg.forward_flops() + msg.backward_flops() + 6ull * H + 3ull * K);
            c.flops += static_cast<std::uint64_t>(n) *
                       (upd.forward_flops() + upd.backward_flops() + 2ull * H);
        }
        std::uint64_t act_values = 0;
        act_values += static_cast<std::uint64_t>(n) * (nd + embed.act_size + fit.act_size);
        act_values += static_cast<std::uint64_t>(n) * (M + 1) * H; // h states
        for (const auto& [msg, upd] : layers) {
            act_values += static_cast<std::uint64_t>(ne) * msg.act_size;
            act_values += static_cast<std::uint64_t>(n) * (upd.act_size + H);
        }
        act_values += static_cast<std::uint64_t>(ne) * (2 + K); // radials
        c.peak_activation_bytes = act_values * sizeof(T);
        c.inferences = 1;
        counters->merge(c);
    }
    return out;
}

} // namespace

NnOutput evaluate(const NnModel& model, const NnInput& input, Precision prec,
                  NnCounters* counters) {
    return prec == Precision::fp64 ? evaluate_impl<double>(model, input, counters, nullptr)
                                   : evaluate_impl<float>(model, input, counters, nullptr);
}

NnOutput evaluate_with_weight_grads(const NnModel& model, const NnInput& input, NnModel& grads) {
    return evaluate_impl<double>(model, input, nullptr, &grads);
}

std::vector<std::vector<double>> descriptors(const NnModel& model, const NnInput& input) {
    input.check();
    const int n = input.n_atoms();
    const int K = model.basis.size();
    std::vector<std::vector<double>> desc(n, std::vector<double>(model.descriptor_dim(), 0.0));
    std::vector<double> bvals(K);
    BasisT<double> basis(model.basis, model.rc_model);
    for (int i = 0; i < n; ++i) {
        for (int e = input.edge_offset[i]; e < input.edge_offset[i + 1]; ++e) {
            const int j = input.edge_neighbor[e];
            const double r = norm(input.edge_dr[e]);
            const double s = switch_value(r, model.rc_model);
            basis.values(r, s, bvals.data());
            for (int k = 0; k < K; ++k) desc[i][input.types[j] * K + k] += bvals[k];
        }
    }
    return desc;
}

NnInput build_input_periodic(const std::vector<Vec3>& positions, const std::vector<int>& types,
                             const std::vector<int>& global_index, const SimBox& box,
                             double rc_model) {
    if (positions.size() != types.size() || positions.size() != global_index.size())
        throw std::invalid_argument("positions/types/global_index size mismatch");
    NnInput input;
    input.positions = positions;
    input.types = types;
    input.global_index = global_index;
    input.is_ghost.assign(positions.size(), 0);

    State tmp;
    tmp.positions = positions;
    tmp.velocities.assign(positions.size(), Vec3{});
    tmp.forces.assign(positions.size(), Vec3{});
    tmp.box = box;
    Topology topo;
    topo.n_atoms = static_cast<int>(positions.size());
    topo.type_of = types;
    topo.mass.assign(positions.size(), 1.0);
    topo.charge.assign(positions.size(), 0.0);
    topo.exclusions.resize(positions.size());

    const NeighborList full =
        build_neighbor_list(tmp, topo, rc_model, 0.0, PairListMode::full);
    input.edge_offset.assign(positions.size() + 1, 0);
    for (const auto& [i, j] : full.pairs) input.edge_offset[i + 1]++;
    for (std::size_t i = 1; i < input.edge_offset.size(); ++i)
        input.edge_offset[i] += input.edge_offset[i - 1];
    input.edge_neighbor.resize(full.pairs.size());
    input.edge_dr.resize(full.pairs.size());
    std::vector<int> cursor(input.edge_offset.begin(), input.edge_offset.end() - 1);
    for (const auto& [i, j] : full.pairs) {
        const int slot = cursor[i]++;
        input.edge_neighbor[slot] = j;
        input.edge_dr[slot] = minimum_image(positions[j] - positions[i], box);
    }
    return input;
}

} // namespace halomd::nn
