#include "idpm/diffusion/ops.hpp"

#include <algorithm>
#include <cmath>

#include "idpm/errors.hpp"
#include "idpm/nn/stats.hpp"

namespace idpm::diffusion {

Vector q_sample(std::span<const double> x0, std::span<const double> noise, double alpha_bar) {
    nn::require_same_size(x0, noise, "q_sample");
    const double a = std::sqrt(alpha_bar);
    const double b = std::sqrt(1.0 - alpha_bar);
    Vector out(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i) out[i] = a * x0[i] + b * noise[i];
    return out;
}

Vector q_sample(std::span<const double> x0, std::size_t t, std::span<const double> noise,
                const NoiseSchedule& schedule) {
    return q_sample(x0, noise, schedule.alpha_bar(t));
}

Vector predict_x0(std::span<const double> x_t, std::span<const double> eps, double alpha_bar) {
    nn::require_same_size(x_t, eps, "predict_x0");
    if (!(alpha_bar > 0.0)) {
        throw DomainError("predict_x0: alpha_bar must be positive");
    }
    const double a = std::sqrt(alpha_bar);
    const double b = std::sqrt(1.0 - alpha_bar);
    Vector out(x_t.size());
    for (std::size_t i = 0; i < x_t.size(); ++i) out[i] = (x_t[i] - b * eps[i]) / a;
    return out;
}

Vector predict_x0(std::span<const double> x_t, std::span<const double> eps, std::size_t t,
                  const NoiseSchedule& schedule) {
    return predict_x0(x_t, eps, schedule.alpha_bar(t));
}

Vector cfg_combine(std::span<const double> eps_uncond, std::span<const double> eps_cond, double s) {
    nn::require_same_size(eps_uncond, eps_cond, "cfg_combine");
    if (s == 1.0) return {eps_cond.begin(), eps_cond.end()};
    Vector out(eps_cond.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = eps_uncond[i] + s * (eps_cond[i] - eps_uncond[i]);
    }
    return out;
}

Vector dynamic_threshold(std::span<const double> x0, double p) {
    if (x0.empty()) throw DomainError("dynamic_threshold: empty array");
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("dynamic_threshold: percentile must lie in (0, 1]");
    Vector mags(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i) mags[i] = std::abs(x0[i]);
    const double s = std::max(1.0, nn::percentile(mags, p));
    Vector out(x0.size());
    for (std::size_t i = 0; i < x0.size(); ++i) out[i] = std::clamp(x0[i], -s, s) / s;
    return out;
}

double noise_mse(const nn::Matrix& noise, const nn::Matrix& predicted) {
    if (noise.rows() != predicted.rows() || noise.cols() != predicted.cols()) {
        throw ShapeError("noise_mse: shape mismatch");
    }
    if (noise.empty()) throw ShapeError("noise_mse: empty batch");
    double s = 0.0;
    auto a = noise.values();
    auto b = predicted.values();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s / static_cast<double>(a.size());
}

} // namespace idpm::diffusion
