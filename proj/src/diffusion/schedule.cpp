#include "idpm/diffusion/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "idpm/errors.hpp"

namespace idpm::diffusion {

std::string to_string(ScheduleKind kind) {
    return kind == ScheduleKind::cosine ? "cosine" : "linear";
}

ScheduleKind parse_schedule_kind(std::string_view text) {
    if (text == "cosine") return ScheduleKind::cosine;
    if (text == "linear") return ScheduleKind::linear;
    throw ConfigError("unknown noise schedule '" + std::string(text) + "' (expected cosine or linear)");
}

NoiseSchedule NoiseSchedule::from_betas(Vector betas) {
    if (betas.empty()) throw ConfigError("noise schedule needs at least one step");
    NoiseSchedule s;
    const std::size_t T = betas.size();
    s.alphas_.resize(T);
    s.alpha_bars_.resize(T);
    s.posterior_variances_.resize(T);
    double running = 1.0;
    for (std::size_t i = 0; i < T; ++i) {
        const double b = betas[i];
        if (!(b > 0.0 && b < 1.0)) {
            throw ConfigError("beta at step " + std::to_string(i + 1) + " is outside (0, 1)");
        }
        const double prev = running;
        s.alphas_[i] = 1.0 - b;
        running *= s.alphas_[i];
        s.alpha_bars_[i] = running;
        s.posterior_variances_[i] = b * (1.0 - prev) / (1.0 - running);
    }
    s.betas_ = std::move(betas);
    return s;
}

std::size_t NoiseSchedule::index(std::size_t t) const {
    if (t < 1 || t > betas_.size()) {
        throw ConfigError("step " + std::to_string(t) + " outside schedule range [1, " +
                          std::to_string(betas_.size()) + "]");
    }
    return t - 1;
}

NoiseSchedule make_cosine_schedule(std::size_t T) {
    if (T == 0) throw ConfigError("cosine schedule: T must be at least 1");
    constexpr double offset = 0.008;
    const auto g = [T](double t) {
        const double c = std::cos((t / static_cast<double>(T) + offset) / (1.0 + offset) * std::numbers::pi / 2.0);
        return c * c;
    };
    Vector betas(T);
    for (std::size_t i = 0; i < T; ++i) {
        const double ratio = g(static_cast<double>(i + 1)) / g(static_cast<double>(i));
        betas[i] = std::min(1.0 - ratio, max_beta);
    }
    return NoiseSchedule::from_betas(std::move(betas));
}

NoiseSchedule make_linear_schedule(std::size_t T) {
    if (T == 0) throw ConfigError("linear schedule: T must be at least 1");
    const double scale = 1000.0 / static_cast<double>(T);
    const double start = 1e-4 * scale;
    const double end = 0.02 * scale;
    Vector betas(T);
    if (T == 1) {
        betas[0] = std::min(start, max_beta);
    } else {
        const double step = (end - start) / static_cast<double>(T - 1);
        for (std::size_t i = 0; i < T; ++i) {
            betas[i] = std::min(start + step * static_cast<double>(i), max_beta);
        }
        betas[T - 1] = std::min(end, max_beta);
    }
    return NoiseSchedule::from_betas(std::move(betas));
}

NoiseSchedule make_schedule(ScheduleKind kind, std::size_t T) {
    return kind == ScheduleKind::cosine ? make_cosine_schedule(T) : make_linear_schedule(T);
}

RespacedSchedule respace(const NoiseSchedule& schedule, std::size_t n) {
    const std::size_t T = schedule.steps();
    if (n < 1 || n > T) {
        throw ConfigError("respace: step count " + std::to_string(n) + " outside [1, " + std::to_string(T) + "]");
    }
    std::vector<std::size_t> kept(n);
    if (n == T) {
        for (std::size_t j = 0; j < T; ++j) kept[j] = j + 1;
        return {schedule, std::move(kept)};
    }
    if (n == 1) {
        kept[0] = T;
    } else {
        // 1 + round(i (T - 1) / (n - 1)) is strictly increasing because the stride is at least 1.
        const double stride = static_cast<double>(T - 1) / static_cast<double>(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            kept[i] = 1 + static_cast<std::size_t>(std::llround(stride * static_cast<double>(i)));
        }
    }

    Vector betas(n);
    double prev = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double ab = schedule.alpha_bar(kept[j]);
        betas[j] = 1.0 - ab / prev;
        prev = ab;
    }
    RespacedSchedule out{NoiseSchedule::from_betas(std::move(betas)), std::move(kept)};
    return out;
}

} // namespace idpm::diffusion
