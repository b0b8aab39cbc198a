#pragma once

#include <cstddef>
#include <vector>

namespace idpm::nn {

// Transformer-style step embedding. The first dim/2 entries are sin(t * w_i),
// the last dim/2 are cos(t * w_i), with w_i = max_period^(-i / (dim/2)).
std::vector<double> sinusoidal_embed(double t, std::size_t dim, double max_period = 10000.0);

} // namespace idpm::nn
