#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace halomd::nn {

enum class ModelFamily { embed_fit, message_passing };

// Dense MLP, tanh on hidden layers, linear output.
struct Mlp {
    std::vector<int> sizes;                   // [in, hidden..., out]
    std::vector<std::vector<double>> weights; // per layer, row-major [out][in]
    std::vector<std::vector<double>> biases;  // per layer [out]

    int n_layers() const { return static_cast<int>(sizes.size()) - 1; }
    int input_dim() const { return sizes.front(); }
    int output_dim() const { return sizes.back(); }
    std::size_t n_params() const;
    void zero();
};

// Gaussian radial basis on [0, rc] with a smooth cutoff switch.
struct RadialBasis {
    std::vector<double> centers; // nm
    double width = 0.1;          // nm

    int size() const { return static_cast<int>(centers.size()); }
};

struct MessageLayer {
    Mlp message; // (H + K) -> H, neighbor state ⊕ rbf
    Mlp update;  // 2H -> H, own state ⊕ aggregated message
};

// Toy deep potential. embed_fit: per-atom energy from an embedded descriptor
// (receptive field = rc). message_passing: additionally L−1 residual message
// layers, widening the receptive field to L·rc.
struct NnModel {
    ModelFamily family = ModelFamily::embed_fit;
    double rc_model = 0.6; // nm
    int n_types = 2;
    int hidden = 32;
    std::uint64_t seed = 0;
    RadialBasis basis;
    Mlp embedding; // descriptor_dim -> H
    Mlp fitting;   // H -> 1
    std::vector<MessageLayer> layers; // empty for embed_fit

    int depth() const { return 1 + static_cast<int>(layers.size()); }
    double receptive_radius() const { return depth() * rc_model; }
    int descriptor_dim() const { return n_types * basis.size(); }
    std::size_t n_params() const;
    void validate() const;
};

// Deterministic random initialization; depth L counts the descriptor hop, so
// message_passing with depth L carries L−1 message layers.
NnModel make_model(ModelFamily family, int depth, double rc_model, int n_types, int n_basis,
                   int hidden, std::uint64_t seed);

// Versioned JSON serialization.
std::string model_to_json(const NnModel& model);
NnModel model_from_json(const std::string& text);
void save_model(const std::string& path, const NnModel& model);
NnModel load_model(const std::string& path);

} // namespace halomd::nn
