#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "idpm/diffusion/schedule.hpp"
#include "idpm/nn/denoiser.hpp"
#include "idpm/nn/matrix.hpp"
#include "idpm/nn/optim.hpp"

namespace idpm::diffusion {

struct TrainConfig {
    ScheduleKind schedule = ScheduleKind::cosine;
    std::size_t diffusion_steps = 1000;
    double cond_dropout = 0.1;
    std::size_t batch_size = 64;
    double learning_rate = 1e-4;
    std::size_t total_batches = 1000;
    double ema_rate = 0.9999;
    std::uint64_t seed = 0;

    void validate() const;
};

// Paired training data, one sample per row. `a` is present only when the
// model is attribute-conditioned.
struct TrainingSet {
    nn::Matrix x;
    nn::Matrix y;
    std::optional<nn::Matrix> a;

    std::size_t size() const noexcept { return x.rows(); }
    void validate() const;
};

// The unconditional token fed in place of y (all zeros) and of a (all -1).
inline constexpr double null_identity_value = 0.0;
inline constexpr double null_attribute_value = -1.0;

// Everything drawn while evaluating one batch of the noise-prediction loss.
struct LossRecord {
    double loss = 0.0;
    std::vector<std::size_t> steps;
    nn::Matrix noise;
    nn::Matrix y_fed;
    std::optional<nn::Matrix> a_fed;
    std::vector<bool> y_dropped;
    std::vector<bool> a_dropped;
};

// Draws t ~ U{1..T} and eps ~ N(0, I) per row, replaces y by the zero vector and
// (independently) a by the -1 vector each with probability `dropout`, evaluates
// the mean-squared noise error and accumulates its gradient into the model.
LossRecord training_loss(nn::ConditionalDenoiser& model, const nn::Matrix& x0, const nn::Matrix& y,
                         const std::optional<nn::Matrix>& a, const NoiseSchedule& schedule, double dropout,
                         std::mt19937_64& rng);

class Trainer {
public:
    Trainer(nn::ConditionalDenoiser& model, NoiseSchedule schedule, TrainConfig config);

    // One optimizer step on the given batch. Returns the batch loss.
    double step(const nn::Matrix& x0, const nn::Matrix& y, const std::optional<nn::Matrix>& a);

    using Progress = std::function<void(std::size_t batch, double loss)>;

    // Runs config.total_batches steps on minibatches drawn with replacement.
    // Returns the per-batch losses.
    std::vector<double> fit(const TrainingSet& data, const Progress& progress = {});

    const nn::EmaParams& ema() const noexcept { return ema_; }
    const nn::AdamState& adam() const noexcept { return adam_; }
    const NoiseSchedule& schedule() const noexcept { return schedule_; }
    const TrainConfig& config() const noexcept { return config_; }

    // Copy of the model carrying the EMA parameters.
    nn::ConditionalDenoiser ema_model() const;

private:
    nn::ConditionalDenoiser& model_;
    NoiseSchedule schedule_;
    TrainConfig config_;
    nn::AdamState adam_;
    nn::EmaParams ema_;
    std::mt19937_64 rng_;
};

} // namespace idpm::diffusion
