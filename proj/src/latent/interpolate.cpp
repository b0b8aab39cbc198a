#include "idpm/latent/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "idpm/errors.hpp"

namespace idpm::latent {

namespace {

void check_tau(double tau) {
    if (!(tau >= 0.0 && tau <= 1.0)) throw ConfigError("interpolation parameter must lie in [0, 1], got " + std::to_string(tau));
}

} // namespace

Vector lerp(std::span<const double> y1, std::span<const double> y2, double tau) {
    nn::require_same_size(y1, y2, "lerp");
    Vector out(y1.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 - tau) * y1[i] + tau * y2[i];
    return out;
}

Vector slerp(std::span<const double> y1, std::span<const double> y2, double tau) {
    nn::require_same_size(y1, y2, "slerp");
    check_tau(tau);
    const double n1 = nn::norm(y1);
    const double n2 = nn::norm(y2);
    if (n1 == 0.0 || n2 == 0.0) throw DomainError("slerp: zero vector");
    const double omega = std::acos(std::clamp(nn::dot(y1, y2) / (n1 * n2), -1.0, 1.0));
    if (omega < slerp_parallel_angle) return lerp(y1, y2, tau);
    if (std::numbers::pi - omega < slerp_parallel_angle) {
        throw DomainError("slerp: antiparallel vectors have no unique geodesic");
    }
    const double s = std::sin(omega);
    const double w1 = std::sin((1.0 - tau) * omega) / s;
    const double w2 = std::sin(tau * omega) / s;
    Vector out(y1.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = w1 * y1[i] + w2 * y2[i];
    return out;
}

} // namespace idpm::latent
