#pragma once

#include <cstddef>
#include <span>

#include "idpm/diffusion/schedule.hpp"
#include "idpm/nn/matrix.hpp"

// Pointwise pieces of the forward and reverse process.
//
// The noising convention is the scaled one, x_t = sqrt(abar) x0 + sqrt(1 - abar) eps.
// The unscaled perturbation x~ = x + eps' (eps' ~ N(0, s^2 I)) used when motivating the
// noise-prediction loss is the same family after dividing by sqrt(abar), with
// s^2 = (1 - abar) / abar; the network still learns eps, and the Tweedie estimate
// E[x0 | x_t] is recovered by predict_x0 below.
namespace idpm::diffusion {

Vector q_sample(std::span<const double> x0, std::span<const double> noise, double alpha_bar);
Vector q_sample(std::span<const double> x0, std::size_t t, std::span<const double> noise,
                const NoiseSchedule& schedule);

// x0 = (x_t - sqrt(1 - abar) eps) / sqrt(abar). Throws DomainError when abar = 0.
Vector predict_x0(std::span<const double> x_t, std::span<const double> eps, double alpha_bar);
Vector predict_x0(std::span<const double> x_t, std::span<const double> eps, std::size_t t,
                  const NoiseSchedule& schedule);

// eps_uncond + s (eps_cond - eps_uncond). At s == 1 the conditional prediction
// is returned unchanged.
Vector cfg_combine(std::span<const double> eps_uncond, std::span<const double> eps_cond, double s);

// s = max(1, p-quantile of |x|); returns clip(x, -s, s) / s.
Vector dynamic_threshold(std::span<const double> x0, double p);

// Mean over rows and columns of (noise - predicted)^2.
double noise_mse(const nn::Matrix& noise, const nn::Matrix& predicted);

} // namespace idpm::diffusion
