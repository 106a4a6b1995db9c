#include "halomd/nn/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "halomd/rng.hpp"
#include "json.hpp"

namespace halomd::nn {

std::size_t Mlp::n_params() const {
    std::size_t n = 0;
    for (int l = 0; l < n_layers(); ++l) n += weights[l].size() + biases[l].size();
    return n;
}

void Mlp::zero() {
    for (auto& w : weights) std::fill(w.begin(), w.end(), 0.0);
    for (auto& b : biases) std::fill(b.begin(), b.end(), 0.0);
}

std::size_t NnModel::n_params() const {
    std::size_t n = embedding.n_params() + fitting.n_params();
    for (const auto& layer : layers) n += layer.message.n_params() + layer.update.n_params();
    return n;
}

void NnModel::validate() const {
    if (rc_model <= 0.0) throw std::invalid_argument("rc_model must be positive");
    if (n_types < 1) throw std::invalid_argument("n_types must be >= 1");
    if (basis.size() < 1) throw std::invalid_argument("radial basis must not be empty");
    if (embedding.input_dim() != descriptor_dim())
        throw std::invalid_argument("embedding input dim != descriptor dim");
    if (embedding.output_dim() != hidden || fitting.input_dim() != hidden)
        throw std::invalid_argument("embedding/fitting width mismatch");
    if (fitting.output_dim() != 1) throw std::invalid_argument("fitting net must output 1 value");
    if (family == ModelFamily::embed_fit && !layers.empty())
        throw std::invalid_argument("embed_fit model cannot carry message layers");
    const int k = basis.size();
    for (const auto& layer : layers) {
        if (layer.message.input_dim() != hidden + k || layer.message.output_dim() != hidden)
            throw std::invalid_argument("message MLP dims mismatch");
        if (layer.update.input_dim() != 2 * hidden || layer.update.output_dim() != hidden)
            throw std::invalid_argument("update MLP dims mismatch");
    }
}

namespace {

Mlp make_mlp(const std::vector<int>& sizes, Rng& rng) {
    Mlp mlp;
    mlp.sizes = sizes;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        const int in = sizes[l], out = sizes[l + 1];
        const double scale = 1.0 / std::sqrt(static_cast<double>(in));
        std::vector<double> w(static_cast<std::size_t>(in) * out);
        for (auto& v : w) v = rng.uniform(-scale, scale);
        std::vector<double> b(out);
        for (auto& v : b) v = rng.uniform(-0.1, 0.1);
        mlp.weights.push_back(std::move(w));
        mlp.biases.push_back(std::move(b));
    }
    return mlp;
}

} // namespace

NnModel make_model(ModelFamily family, int depth, double rc_model, int n_types, int n_basis,
                   int hidden, std::uint64_t seed) {
    if (depth < 1) throw std::invalid_argument("depth must be >= 1");
    if (family == ModelFamily::embed_fit && depth != 1)
        throw std::invalid_argument("embed_fit has depth 1 by construction");

    NnModel model;
    model.family = family;
    model.rc_model = rc_model;
    model.n_types = n_types;
    model.hidden = hidden;
    model.seed = seed;

    model.basis.centers.resize(n_basis);
    for (int k = 0; k < n_basis; ++k)
        model.basis.centers[k] = n_basis > 1 ? rc_model * k / (n_basis - 1) : 0.0;
    model.basis.width = n_basis > 1 ? rc_model / (n_basis - 1) : rc_model;

    Rng rng(seed);
    const int nd = model.descriptor_dim();
    model.embedding = make_mlp({nd, hidden, hidden}, rng);
    model.fitting = make_mlp({hidden, hidden, 1}, rng);
    for (int l = 1; l < depth; ++l) {
        MessageLayer layer;
        layer.message = make_mlp({hidden + n_basis, hidden, hidden}, rng);
        layer.update = make_mlp({2 * hidden, hidden, hidden}, rng);
        model.layers.push_back(std::move(layer));
    }
    model.validate();
    return model;
}

namespace {

using nlohmann::json;

json mlp_to_json(const Mlp& mlp) {
    return json{{"sizes", mlp.sizes}, {"weights", mlp.weights}, {"biases", mlp.biases}};
}

Mlp mlp_from_json(const json& j) {
    Mlp mlp;
    mlp.sizes = j.at("sizes").get<std::vector<int>>();
    mlp.weights = j.at("weights").get<std::vector<std::vector<double>>>();
    mlp.biases = j.at("biases").get<std::vector<std::vector<double>>>();
    if (mlp.weights.size() != mlp.sizes.size() - 1 || mlp.biases.size() != mlp.sizes.size() - 1)
        throw std::invalid_argument("MLP layer count mismatch");
    for (int l = 0; l < mlp.n_layers(); ++l) {
        const std::size_t expected = static_cast<std::size_t>(mlp.sizes[l]) * mlp.sizes[l + 1];
        if (mlp.weights[l].size() != expected ||
            mlp.biases[l].size() != static_cast<std::size_t>(mlp.sizes[l + 1]))
            throw std::invalid_argument("MLP weight shape mismatch");
    }
    return mlp;
}

} // namespace

std::string model_to_json(const NnModel& model) {
    json j;
    j["format"] = "halomd-model";
    j["version"] = 1;
    j["family"] = model.family == ModelFamily::embed_fit ? "embed_fit" : "message_passing";
    j["rc_model"] = model.rc_model;
    j["n_types"] = model.n_types;
    j["hidden"] = model.hidden;
    j["seed"] = model.seed;
    j["basis"] = {{"centers", model.basis.centers}, {"width", model.basis.width}};
    j["embedding"] = mlp_to_json(model.embedding);
    j["fitting"] = mlp_to_json(model.fitting);
    j["layers"] = json::array();
    for (const auto& layer : model.layers)
        j["layers"].push_back(
            {{"message", mlp_to_json(layer.message)}, {"update", mlp_to_json(layer.update)}});
    return j.dump(1);
}

NnModel model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("model JSON parse error: ") + e.what());
    }
    if (j.value("format", "") != "halomd-model")
        throw std::invalid_argument("not a halomd model file");
    if (j.value("version", 0) != 1)
        throw std::invalid_argument("unsupported model version " +
                                    std::to_string(j.value("version", 0)));
    NnModel model;
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "embed_fit")
        model.family = ModelFamily::embed_fit;
    else if (fam == "message_passing")
        model.family = ModelFamily::message_passing;
    else
        throw std::invalid_argument("unknown model family '" + fam + "'");
    model.rc_model = j.at("rc_model").get<double>();
    model.n_types = j.at("n_types").get<int>();
    model.hidden = j.at("hidden").get<int>();
    model.seed = j.value("seed", 0ull);
    model.basis.centers = j.at("basis").at("centers").get<std::vector<double>>();
    model.basis.width = j.at("basis").at("width").get<double>();
    model.embedding = mlp_from_json(j.at("embedding"));
    model.fitting = mlp_from_json(j.at("fitting"));
    for (const auto& jl : j.at("layers")) {
        MessageLayer layer;
        layer.message = mlp_from_json(jl.at("message"));
        layer.update = mlp_from_json(jl.at("update"));
        model.layers.push_back(std::move(layer));
    }
    model.validate();
    return model;
}

void save_model(const std::string& path, const NnModel& model) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << model_to_json(model);
}

NnModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str());
}

} // namespace halomd::nn
