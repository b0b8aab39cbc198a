#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>

#include <json.hpp>

#include "idpm/nn/matrix.hpp"

namespace idpm::oracle {

// The black-box function f: R^d -> R^k being inverted. Implementations are
// immutable after construction; embed() may be called concurrently.
class Embedder {
public:
    virtual ~Embedder() = default;

    virtual std::string name() const = 0;
    virtual std::size_t input_dim() const = 0;
    virtual std::size_t output_dim() const = 0;

    virtual Vector embed(std::span<const double> x) const = 0;

    // White-box access. Embedders without it throw StateError from jacobian().
    virtual bool has_gradient() const { return false; }
    // k x d matrix of partial derivatives df_i/dx_j.
    virtual nn::Matrix jacobian(std::span<const double> x) const;

    // Enough to reconstruct the embedder with make_embedder().
    virtual nlohmann::json descriptor() const = 0;

protected:
    void check_input(std::span<const double> x) const;
};

using EmbedderPtr = std::shared_ptr<const Embedder>;

// y = ||x||_2 (k = 1). The gradient x / ||x|| is undefined at the origin.
class RadiusEmbedder final : public Embedder {
public:
    explicit RadiusEmbedder(std::size_t d);

    std::string name() const override { return "radius"; }
    std::size_t input_dim() const override { return d_; }
    std::size_t output_dim() const override { return 1; }
    Vector embed(std::span<const double> x) const override;
    bool has_gradient() const override { return true; }
    nn::Matrix jacobian(std::span<const double> x) const override;
    nlohmann::json descriptor() const override;

private:
    std::size_t d_;
};

// y = A x.
class LinearEmbedder final : public Embedder {
public:
    explicit LinearEmbedder(nn::Matrix a);

    std::string name() const override { return "linear"; }
    std::size_t input_dim() const override { return a_.cols(); }
    std::size_t output_dim() const override { return a_.rows(); }
    Vector embed(std::span<const double> x) const override;
    bool has_gradient() const override { return true; }
    nn::Matrix jacobian(std::span<const double> x) const override;
    nlohmann::json descriptor() const override;

private:
    nn::Matrix a_;
};

// A fixed random network x -> normalize(W2 tanh(W1 x + b1) + b2) whose output
// lies on the unit sphere, standing in for a pre-trained recognition model.
// Same (d, k, hidden, seed) gives the same function.
class FrozenMlpEmbedder final : public Embedder {
public:
    FrozenMlpEmbedder(std::size_t d, std::size_t k, std::uint64_t seed, std::size_t hidden = 32);

    std::string name() const override { return "frozen_mlp"; }
    std::size_t input_dim() const override { return d_; }
    std::size_t output_dim() const override { return k_; }
    Vector embed(std::span<const double> x) const override;
    nlohmann::json descriptor() const override;

private:
    std::size_t d_, k_, hidden_;
    std::uint64_t seed_;
    nn::Matrix w1_, w2_;
    Vector b1_, b2_;
};

EmbedderPtr radius_embedder(std::size_t d);
EmbedderPtr linear_embedder(nn::Matrix a);
EmbedderPtr frozen_mlp_embedder(std::size_t d, std::size_t k, std::uint64_t seed, std::size_t hidden = 32);

// Inverse of Embedder::descriptor().
EmbedderPtr make_embedder(const nlohmann::json& descriptor);

} // namespace idpm::oracle
