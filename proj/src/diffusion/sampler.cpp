#include "idpm/diffusion/sampler.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "idpm/diffusion/ops.hpp"
#include "idpm/diffusion/trainer.hpp"
#include "idpm/errors.hpp"

namespace idpm::diffusion {

std::string to_string(VarianceMode mode) {
    return mode == VarianceMode::posterior ? "posterior" : "beta";
}

VarianceMode parse_variance_mode(std::string_view text) {
    if (text == "posterior") return VarianceMode::posterior;
    if (text == "beta") return VarianceMode::beta;
    throw ConfigError("unknown variance mode '" + std::string(text) + "' (expected posterior or beta)");
}

std::string to_string(ThresholdMode mode) {
    switch (mode) {
    case ThresholdMode::automatic: return "auto";
    case ThresholdMode::on: return "on";
    case ThresholdMode::off: return "off";
    }
    return "auto";
}

ThresholdMode parse_threshold_mode(std::string_view text) {
    if (text == "auto") return ThresholdMode::automatic;
    if (text == "on") return ThresholdMode::on;
    if (text == "off") return ThresholdMode::off;
    throw ConfigError("unknown threshold mode '" + std::string(text) + "' (expected auto, on or off)");
}

std::size_t SampleConfig::resolved_steps(std::size_t T) const {
    if (respaced_steps) return *respaced_steps;
    const auto quarter = static_cast<std::size_t>(std::llround(static_cast<double>(T) / 4.0));
    return std::max<std::size_t>(1, quarter);
}

bool SampleConfig::threshold_enabled() const {
    switch (threshold) {
    case ThresholdMode::on: return true;
    case ThresholdMode::off: return false;
    case ThresholdMode::automatic: return guidance > automatic_threshold_guidance;
    }
    return false;
}

SampleConfig SampleConfig::validated(std::size_t T) const {
    SampleConfig out = *this;
    const std::size_t n = resolved_steps(T);
    if (n < 1 || n > T) {
        throw ConfigError("sample: respaced step count " + std::to_string(n) + " outside [1, " + std::to_string(T) + "]");
    }
    if (!(threshold_percentile > 0.0 && threshold_percentile <= 1.0)) {
        throw ConfigError("sample: threshold percentile must lie in (0, 1]");
    }
    if (!std::isfinite(guidance)) throw ConfigError("sample: guidance scale must be finite");
    if (guidance < 1.0) {
        std::cerr << "warning: guidance scale " << guidance << " is below 1; using 1\n";
        out.guidance = 1.0;
    }
    return out;
}

namespace {

nn::Matrix broadcast(std::span<const double> v, std::size_t rows) {
    nn::Matrix m(rows, v.size());
    for (std::size_t r = 0; r < rows; ++r) m.set_row(r, v);
    return m;
}

} // namespace

NoisePrediction guided_prediction(const nn::ConditionalDenoiser& model, const nn::Matrix& x_t,
                                  std::span<const double> y, std::optional<std::span<const double>> a,
                                  std::size_t model_step, double alpha_bar, double guidance) {
    const auto& topo = model.topology();
    const std::size_t n = x_t.rows();
    if (y.size() != topo.id_dim) {
        throw ShapeError("sample: target embedding has " + std::to_string(y.size()) + " entries, model expects " +
                         std::to_string(topo.id_dim));
    }
    if (a && a->size() != topo.attr_dim) {
        throw ShapeError("sample: attribute vector has " + std::to_string(a->size()) + " entries, model expects " +
                         std::to_string(topo.attr_dim));
    }

    const Vector null_attr(topo.attr_dim, null_attribute_value);
    std::optional<nn::Matrix> cond_a;
    std::optional<nn::Matrix> uncond_a;
    if (topo.has_attributes()) {
        cond_a = broadcast(a ? *a : std::span<const double>(null_attr), n);
        uncond_a = broadcast(null_attr, n);
    }

    nn::DenoiserBatch batch{x_t, broadcast(y, n), cond_a, std::vector<std::size_t>(n, model_step)};
    NoisePrediction out;
    nn::Matrix cond = model.forward(batch);
    if (guidance == 1.0) {
        out.eps = std::move(cond);
    } else {
        batch.y = nn::Matrix(n, topo.id_dim, Vector(n * topo.id_dim, null_identity_value));
        batch.a = uncond_a;
        const nn::Matrix uncond = model.forward(batch);
        out.eps = nn::Matrix(n, topo.data_dim);
        for (std::size_t r = 0; r < n; ++r) out.eps.set_row(r, cfg_combine(uncond.row(r), cond.row(r), guidance));
    }
    out.x0 = nn::Matrix(n, topo.data_dim);
    for (std::size_t r = 0; r < n; ++r) out.x0.set_row(r, predict_x0(x_t.row(r), out.eps.row(r), alpha_bar));
    return out;
}

nn::Matrix sample(const nn::ConditionalDenoiser& model, std::span<const double> y,
                  std::optional<std::span<const double>> a, const NoiseSchedule& schedule,
                  const SampleConfig& config, std::size_t n, std::mt19937_64& rng) {
    if (!model.fitted()) {
        throw StateError("sample: model has not been trained or loaded from a checkpoint");
    }
    const SampleConfig cfg = config.validated(schedule.steps());
    const RespacedSchedule sub = respace(schedule, cfg.resolved_steps(schedule.steps()));
    const NoiseSchedule& s = sub.schedule;
    const std::size_t d = model.topology().data_dim;
    const bool threshold = cfg.threshold_enabled();

    std::normal_distribution<double> normal(0.0, 1.0);
    nn::Matrix x(n, d);
    for (double& v : x.values()) v = normal(rng);

    for (std::size_t j = s.steps(); j >= 1; --j) {
        NoisePrediction pred = guided_prediction(model, x, y, a, sub.original_steps[j - 1], s.alpha_bar(j), cfg.guidance);
        if (threshold) {
            for (std::size_t r = 0; r < n; ++r) {
                pred.x0.set_row(r, dynamic_threshold(pred.x0.row(r), cfg.threshold_percentile));
            }
        }

        const double ab = s.alpha_bar(j);
        const double ab_prev = s.alpha_bar_prev(j);
        const double beta = s.beta(j);
        const double coef_x0 = beta * std::sqrt(ab_prev) / (1.0 - ab);
        const double coef_xt = (1.0 - ab_prev) * std::sqrt(s.alpha(j)) / (1.0 - ab);
        const double var = cfg.variance == VarianceMode::posterior ? s.posterior_variance(j) : beta;
        const double sigma = j > 1 ? std::sqrt(var) : 0.0;

        auto xv = x.values();
        auto x0v = pred.x0.values();
        for (std::size_t i = 0; i < xv.size(); ++i) {
            double next = coef_x0 * x0v[i] + coef_xt * xv[i];
            if (j > 1) next += sigma * normal(rng);
            if (!std::isfinite(next)) {
                throw NumericalError("sample: non-finite value at respaced step " + std::to_string(j) + " (original step " +
                                     std::to_string(sub.original_steps[j - 1]) + "), sample " +
                                     std::to_string(i / d) + ", coordinate " + std::to_string(i % d));
            }
            xv[i] = next;
        }
    }
    return x;
}

nn::Matrix sample(const nn::ConditionalDenoiser& model, std::span<const double> y,
                  std::optional<std::span<const double>> a, const NoiseSchedule& schedule,
                  const SampleConfig& config, std::size_t n) {
    std::mt19937_64 rng(config.seed);
    return sample(model, y, a, schedule, config, n, rng);
}

} // namespace idpm::diffusion
