#include "idpm/oracle/embedder.hpp"

#include <cmath>
#include <random>

#include "idpm/errors.hpp"

namespace idpm::oracle {

nn::Matrix Embedder::jacobian(std::span<const double>) const {
    throw StateError("embedder '" + name() + "' does not expose gradients");
}

void Embedder::check_input(std::span<const double> x) const {
    if (x.size() != input_dim()) {
        throw ShapeError(name() + " embedder: input has " + std::to_string(x.size()) + " entries, expected " +
                         std::to_string(input_dim()));
    }
}

RadiusEmbedder::RadiusEmbedder(std::size_t d) : d_(d) {
    if (d < 2) throw ConfigError("radius embedder needs d >= 2");
}

Vector RadiusEmbedder::embed(std::span<const double> x) const {
    check_input(x);
    return {nn::norm(x)};
}

nn::Matrix RadiusEmbedder::jacobian(std::span<const double> x) const {
    check_input(x);
    const double r = nn::norm(x);
    if (r == 0.0) throw DomainError("radius embedder: gradient is undefined at the origin");
    nn::Matrix j(1, d_);
    for (std::size_t i = 0; i < d_; ++i) j(0, i) = x[i] / r;
    return j;
}

nlohmann::json RadiusEmbedder::descriptor() const {
    return {{"kind", "radius"}, {"d", d_}};
}

LinearEmbedder::LinearEmbedder(nn::Matrix a) : a_(std::move(a)) {
    if (a_.empty()) throw ConfigError("linear embedder: matrix is empty");
    if (!a_.all_finite()) throw ConfigError("linear embedder: matrix has non-finite entries");
}

Vector LinearEmbedder::embed(std::span<const double> x) const {
    check_input(x);
    return a_.apply(x);
}

nn::Matrix LinearEmbedder::jacobian(std::span<const double> x) const {
    check_input(x);
    return a_;
}

nlohmann::json LinearEmbedder::descriptor() const {
    return {{"kind", "linear"}, {"rows", a_.rows()}, {"cols", a_.cols()},
            {"values", std::vector<double>(a_.values().begin(), a_.values().end())}};
}

FrozenMlpEmbedder::FrozenMlpEmbedder(std::size_t d, std::size_t k, std::uint64_t seed, std::size_t hidden)
    : d_(d), k_(k), hidden_(hidden), seed_(seed), w1_(hidden, d), w2_(k, hidden), b1_(hidden), b2_(k) {
    if (d == 0 || k == 0 || hidden == 0) throw ConfigError("frozen MLP embedder: dimensions must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double s1 = 1.0 / std::sqrt(static_cast<double>(d));
    const double s2 = 1.0 / std::sqrt(static_cast<double>(hidden));
    for (double& w : w1_.values()) w = s1 * normal(rng);
    for (double& b : b1_) b = 0.1 * normal(rng);
    for (double& w : w2_.values()) w = s2 * normal(rng);
    for (double& b : b2_) b = 0.1 * normal(rng);
}

Vector FrozenMlpEmbedder::embed(std::span<const double> x) const {
    check_input(x);
    Vector h = w1_.apply(x);
    for (std::size_t i = 0; i < hidden_; ++i) h[i] = std::tanh(h[i] + b1_[i]);
    Vector y = w2_.apply(h);
    for (std::size_t i = 0; i < k_; ++i) y[i] += b2_[i];
    const double n = nn::norm(y);
    if (!(n > 0.0)) throw DomainError("frozen MLP embedder: pre-normalization output vanished");
    for (double& v : y) v /= n;
    return y;
}

nlohmann::json FrozenMlpEmbedder::descriptor() const {
    return {{"kind", "frozen_mlp"}, {"d", d_}, {"k", k_}, {"hidden", hidden_}, {"seed", seed_}};
}

EmbedderPtr radius_embedder(std::size_t d) {
    return std::make_shared<RadiusEmbedder>(d);
}

EmbedderPtr linear_embedder(nn::Matrix a) {
    return std::make_shared<LinearEmbedder>(std::move(a));
}

EmbedderPtr frozen_mlp_embedder(std::size_t d, std::size_t k, std::uint64_t seed, std::size_t hidden) {
    return std::make_shared<FrozenMlpEmbedder>(d, k, seed, hidden);
}

EmbedderPtr make_embedder(const nlohmann::json& desc) {
    try {
        const std::string kind = desc.at("kind").get<std::string>();
        if (kind == "radius") return radius_embedder(desc.at("d").get<std::size_t>());
        if (kind == "linear") {
            const auto rows = desc.at("rows").get<std::size_t>();
            const auto cols = desc.at("cols").get<std::size_t>();
            return linear_embedder(nn::Matrix(rows, cols, desc.at("values").get<std::vector<double>>()));
        }
        if (kind == "frozen_mlp") {
            return frozen_mlp_embedder(desc.at("d").get<std::size_t>(), desc.at("k").get<std::size_t>(),
                                       desc.at("seed").get<std::uint64_t>(), desc.value("hidden", std::size_t{32}));
        }
        throw ConfigError("unknown embedder kind '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid embedder descriptor: ") + e.what());
    }
}

} // namespace idpm::oracle
