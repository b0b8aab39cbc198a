#pragma once

#include <span>

namespace idpm::nn {

// Quantile p in [0, 1] with linear interpolation between order statistics
// (position p * (n - 1) in the sorted values). The input need not be sorted.
double percentile(std::span<const double> values, double p);

} // namespace idpm::nn
