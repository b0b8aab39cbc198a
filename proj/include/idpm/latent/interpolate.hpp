#pragma once

#include <span>

#include "idpm/nn/matrix.hpp"

namespace idpm::latent {

// Below this angle (radians) slerp falls back to lerp.
inline constexpr double slerp_parallel_angle = 1e-6;

// (1 - tau) y1 + tau y2
Vector lerp(std::span<const double> y1, std::span<const double> y2, double tau);

// Constant angular velocity interpolation along the great circle through y1 and y2:
// (sin((1 - tau) W) y1 + sin(tau W) y2) / sin W, W = angle(y1, y2).
// Zero vectors and antiparallel pairs (no unique geodesic) throw DomainError.
Vector slerp(std::span<const double> y1, std::span<const double> y2, double tau);

} // namespace idpm::latent
