#pragma once

#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "idpm/nn/matrix.hpp"
#include "idpm/oracle/embedder.hpp"

namespace idpm::eval {

// Draws one input from the data distribution.
using DataSampler = std::function<Vector(std::mt19937_64&)>;

struct RejectionResult {
    nn::Matrix samples; // accepted inputs, one per row
    std::size_t draws = 0;
    double acceptance_rate = 0.0;
};

// Exact sampler for the data distribution restricted to the pre-image set
// {x : |f(x) - target| <= tolerance}. Stops after `wanted` acceptances or
// `max_draws` draws; zero acceptances throws NumericalError with the rate.
RejectionResult rejection_oracle(const oracle::Embedder& embedder, std::span<const double> target, double tolerance,
                                 const DataSampler& data, std::size_t wanted, std::mt19937_64& rng,
                                 std::size_t max_draws);

struct GdOptions {
    double step_size = 0.1;
    std::size_t max_steps = 10000;
    double tolerance = 1e-6;
    // Consecutive loss increases tolerated before declaring divergence.
    std::size_t divergence_window = 100;
};

struct GdResult {
    Vector x;
    // 0.5 |target - f(x)|^2 at every iterate, starting with x_init.
    std::vector<double> loss_trace;
    std::size_t steps = 0;
    bool converged = false;
};

// White-box inversion by gradient descent on 0.5 |y - f(x)|^2:
//   x <- x + step_size * J(x)^T (y - f(x))
// until |y - f(x)| < tolerance or max_steps. Requires embedder.has_gradient().
GdResult whitebox_gd_invert(const oracle::Embedder& embedder, std::span<const double> target,
                            std::span<const double> x_init, const GdOptions& options = {});

} // namespace idpm::eval
