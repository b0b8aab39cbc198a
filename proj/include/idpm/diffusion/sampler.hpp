#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>

#include "idpm/diffusion/schedule.hpp"
#include "idpm/nn/denoiser.hpp"
#include "idpm/nn/matrix.hpp"

namespace idpm::diffusion {

enum class VarianceMode { posterior, beta };
enum class ThresholdMode { automatic, on, off };

std::string to_string(VarianceMode mode);
VarianceMode parse_variance_mode(std::string_view text);
std::string to_string(ThresholdMode mode);
ThresholdMode parse_threshold_mode(std::string_view text);

struct SampleConfig {
    double guidance = 2.0;
    // Defaults to T / 4 (rounded, at least 1).
    std::optional<std::size_t> respaced_steps;
    double threshold_percentile = 0.99;
    // automatic enables thresholding only for guidance > 1.5.
    ThresholdMode threshold = ThresholdMode::automatic;
    std::uint64_t seed = 0;
    VarianceMode variance = VarianceMode::posterior;

    std::size_t resolved_steps(std::size_t T) const;
    bool threshold_enabled() const;

    // Returns a copy with guidance clamped to >= 1 (warning on stderr) after
    // checking the step count and percentile against the schedule.
    SampleConfig validated(std::size_t T) const;
};

inline constexpr double automatic_threshold_guidance = 1.5;

// Guided noise prediction and the x0 estimate derived from it, one row per sample.
struct NoisePrediction {
    nn::Matrix eps;
    nn::Matrix x0;
};

// eps = cfg_combine(eps(x_t, 0, t), eps(x_t, y, t), s); x0 via predict_x0 at
// alpha_bar (the unconditional branch is skipped when s == 1).
NoisePrediction guided_prediction(const nn::ConditionalDenoiser& model, const nn::Matrix& x_t,
                                  std::span<const double> y, std::optional<std::span<const double>> a,
                                  std::size_t model_step, double alpha_bar, double guidance);

// Ancestral sampling with classifier-free guidance. Starts at x_T ~ N(0, I),
// walks the respaced schedule from its last step down to 1 and returns n samples
// (one per row). When the model is attribute-conditioned and `a` is absent, the
// -1 token is used for both branches.
nn::Matrix sample(const nn::ConditionalDenoiser& model, std::span<const double> y,
                  std::optional<std::span<const double>> a, const NoiseSchedule& schedule,
                  const SampleConfig& config, std::size_t n, std::mt19937_64& rng);

// Same as above with the generator seeded from config.seed.
nn::Matrix sample(const nn::ConditionalDenoiser& model, std::span<const double> y,
                  std::optional<std::span<const double>> a, const NoiseSchedule& schedule,
                  const SampleConfig& config, std::size_t n);

} // namespace idpm::diffusion
