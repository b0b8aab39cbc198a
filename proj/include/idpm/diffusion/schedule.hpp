#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idpm/nn/matrix.hpp"

namespace idpm::diffusion {

enum class ScheduleKind { cosine, linear };

std::string to_string(ScheduleKind kind);
ScheduleKind parse_schedule_kind(std::string_view text);

// Per-step quantities of a T-step forward process. Steps are 1-based:
// step t uses betas()[t - 1]. alpha_bar is the running product of (1 - beta).
class NoiseSchedule {
public:
    NoiseSchedule() = default;

    // Validates 0 < beta < 1 and derives every other array from the betas.
    static NoiseSchedule from_betas(Vector betas);

    std::size_t steps() const noexcept { return betas_.size(); }

    double beta(std::size_t t) const { return betas_[index(t)]; }
    double alpha(std::size_t t) const { return alphas_[index(t)]; }
    double alpha_bar(std::size_t t) const { return alpha_bars_[index(t)]; }
    // alpha_bar at t - 1, with alpha_bar_0 = 1.
    double alpha_bar_prev(std::size_t t) const { return t == 1 ? 1.0 : alpha_bars_[index(t) - 1]; }
    // beta_t (1 - alpha_bar_{t-1}) / (1 - alpha_bar_t); zero at t = 1.
    double posterior_variance(std::size_t t) const { return posterior_variances_[index(t)]; }

    std::span<const double> betas() const noexcept { return betas_; }
    std::span<const double> alpha_bars() const noexcept { return alpha_bars_; }

    friend bool operator==(const NoiseSchedule&, const NoiseSchedule&) = default;

private:
    std::size_t index(std::size_t t) const;

    Vector betas_;
    Vector alphas_;
    Vector alpha_bars_;
    Vector posterior_variances_;
};

inline constexpr double max_beta = 0.999;

// alpha_bar(t) = g(t) / g(0), g(t) = cos^2(((t / T) + 0.008) / 1.008 * pi / 2),
// beta_t = min(1 - alpha_bar(t) / alpha_bar(t - 1), 0.999).
NoiseSchedule make_cosine_schedule(std::size_t T);

// Betas evenly spaced from 1e-4 * 1000 / T to 0.02 * 1000 / T (capped at 0.999).
NoiseSchedule make_linear_schedule(std::size_t T);

NoiseSchedule make_schedule(ScheduleKind kind, std::size_t T);

// A schedule restricted to a subsequence of the original steps.
struct RespacedSchedule {
    NoiseSchedule schedule;
    // original_steps[j - 1] is the original step that respaced step j stands for.
    std::vector<std::size_t> original_steps;
};

// Keeps n evenly spaced steps including both 1 and T (only T when n = 1) and
// recomputes betas so the kept alpha_bar values are those of the original schedule.
RespacedSchedule respace(const NoiseSchedule& schedule, std::size_t n);

} // namespace idpm::diffusion
