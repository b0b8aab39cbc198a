#include "idpm/nn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "idpm/errors.hpp"

namespace idpm::nn {

double percentile(std::span<const double> values, double p) {
    if (values.empty()) throw DomainError("percentile of an empty array");
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("percentile must lie in [0, 1]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

} // namespace idpm::nn
