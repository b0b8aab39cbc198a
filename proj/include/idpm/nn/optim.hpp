#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "idpm/nn/linear.hpp"
#include "idpm/nn/matrix.hpp"

namespace idpm::nn {

struct AdamState {
    double learning_rate = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::uint64_t step = 0;
    Vector first_moment;
    Vector second_moment;

    static AdamState for_parameters(std::size_t count, double learning_rate);
};

// One bias-corrected Adam update over all parameter tensors (in order),
// then zeroes every gradient buffer.
void adam_step(std::span<const ParamView> params, AdamState& state);

// Exponential moving average of a flat parameter vector.
struct EmaParams {
    double rate = 0.9999;
    Vector shadow;

    EmaParams() = default;
    EmaParams(double rate, Vector initial);
};

// shadow <- rate * shadow + (1 - rate) * params
void ema_update(EmaParams& ema, std::span<const double> params);

} // namespace idpm::nn
