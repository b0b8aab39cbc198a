#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "idpm/nn/linear.hpp"
#include "idpm/nn/matrix.hpp"

namespace idpm::nn {

struct DenoiserTopology {
    std::size_t data_dim = 2;
    std::size_t id_dim = 1;
    std::size_t attr_dim = 0; // 0 disables attribute conditioning
    std::size_t time_embed_dim = 64;
    std::vector<std::size_t> hidden_dims{128, 128, 128};

    void validate() const;
    std::size_t param_count() const;
    bool has_attributes() const noexcept { return attr_dim > 0; }

    friend bool operator==(const DenoiserTopology&, const DenoiserTopology&) = default;
};

// One row per sample. `steps` holds the (original, 1-based) diffusion step of each row.
struct DenoiserBatch {
    Matrix x;
    Matrix y;
    std::optional<Matrix> a;
    std::vector<std::size_t> steps;
};

// Noise predictor eps(x_t, y, a, t) as a SiLU MLP.
//
// The condition vector c = time_embed(t) + id_proj(y) [+ attr_proj(a)] has
// width time_embed_dim. Each hidden layer l receives inject_l(silu(c)) added to
// its pre-activation:
//
//   h_0 = silu(input_proj(x)   + inject_0(silu(c)))
//   h_l = silu(hidden_l(h_l-1) + inject_l(silu(c)))
//   eps = output(h_last)
//
// The output layer starts at zero, so an untrained model predicts eps = 0.
// When the model has an attribute projection but a batch carries no `a`, the
// projection is skipped entirely.
class ConditionalDenoiser {
public:
    ConditionalDenoiser() = default;
    ConditionalDenoiser(DenoiserTopology topology, std::uint64_t seed);

    const DenoiserTopology& topology() const noexcept { return topology_; }
    std::size_t param_count() const noexcept { return topology_.param_count(); }

    // Pure forward pass; safe to call concurrently on a model that is not being trained.
    Matrix forward(const DenoiserBatch& batch) const;

    // Single-sample convenience wrapper around forward().
    Vector predict(std::span<const double> x_t, std::span<const double> y,
                   std::optional<std::span<const double>> a, std::size_t step) const;

    // Forward pass that keeps the activations needed by backward().
    Matrix forward_train(const DenoiserBatch& batch);

    // Accumulates d(sum(upstream * eps_pred))/d(param) into every gradient buffer.
    // Consumes the cached activations; a second call without a new forward_train throws StateError.
    void backward(const Matrix& upstream);

    void zero_grad();
    std::vector<ParamView> parameters();

    Vector flat_parameters() const;
    void set_flat_parameters(std::span<const double> flat);

    // Sampling refuses models that were never trained or loaded.
    bool fitted() const noexcept { return fitted_; }
    void mark_fitted() noexcept { fitted_ = true; }

    LinearLayer& input_proj() noexcept { return input_proj_; }
    std::vector<LinearLayer>& hidden_layers() noexcept { return hidden_; }
    LinearLayer& output_layer() noexcept { return output_; }
    LinearLayer& id_proj() noexcept { return id_proj_; }
    std::optional<LinearLayer>& attr_proj() noexcept { return attr_proj_; }
    std::vector<LinearLayer>& injections() noexcept { return inject_; }

private:
    struct Activations {
        Matrix x, y;
        std::optional<Matrix> a;
        Matrix cond_pre, cond_act;
        std::vector<Matrix> pre, act;
    };

    void check_batch(const DenoiserBatch& batch) const;
    Matrix run(const DenoiserBatch& batch, Activations* cache) const;
    std::vector<const LinearLayer*> ordered_layers() const;

    DenoiserTopology topology_;
    LinearLayer input_proj_;
    std::vector<LinearLayer> hidden_;
    LinearLayer output_;
    LinearLayer id_proj_;
    std::optional<LinearLayer> attr_proj_;
    std::vector<LinearLayer> inject_;
    std::optional<Activations> cache_;
    bool fitted_ = false;
};

} // namespace idpm::nn
