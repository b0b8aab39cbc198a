#include "idpm/nn/time_embedding.hpp"

#include <cmath>
#include <string>

#include "idpm/errors.hpp"

namespace idpm::nn {

std::vector<double> sinusoidal_embed(double t, std::size_t dim, double max_period) {
    if (dim == 0 || dim % 2 != 0) {
        throw ConfigError("sinusoidal_embed: dim must be a positive even number, got " + std::to_string(dim));
    }
    if (!(t >= 0.0)) {
        throw ConfigError("sinusoidal_embed: step index must be nonnegative");
    }
    const std::size_t half = dim / 2;
    std::vector<double> out(dim);
    const double log_period = std::log(max_period);
    for (std::size_t i = 0; i < half; ++i) {
        const double freq = std::exp(-log_period * static_cast<double>(i) / static_cast<double>(half));
        out[i] = std::sin(t * freq);
        out[half + i] = std::cos(t * freq);
    }
    return out;
}

} // namespace idpm::nn
