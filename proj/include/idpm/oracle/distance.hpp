#pragma once

#include <optional>
#include <span>
#include <vector>

#include "idpm/nn/matrix.hpp"

namespace idpm::oracle {

// arccos(cos_sim(y1 - mean, y2 - mean)) / pi, in [0, 1]. The cosine is clamped
// to [-1, 1] before arccos. Throws DomainError if either centered vector is zero.
double angular_distance(std::span<const double> y1, std::span<const double> y2,
                        std::optional<std::span<const double>> mean = std::nullopt);

// Coordinate-wise arithmetic mean. Throws DomainError on an empty list.
Vector mean_embedding(const std::vector<Vector>& ys);
Vector mean_embedding(const nn::Matrix& ys);

} // namespace idpm::oracle
