#pragma once

#include <cstddef>
#include <vector>

#include "idpm/nn/matrix.hpp"

namespace idpm::latent {

struct PcaBasis {
    Vector mean;
    // Orthonormal principal axes, largest eigenvalue first.
    std::vector<Vector> axes;
    // Sample-covariance eigenvalues (denominator n - 1), descending and nonnegative.
    Vector eigenvalues;

    std::size_t dim() const noexcept { return mean.size(); }
};

// Eigendecomposition of the mean-centered sample covariance of the rows of ys.
// Each axis is signed so its largest-magnitude coordinate is positive.
// Throws DomainError for fewer than two samples.
PcaBasis fit_pca(const nn::Matrix& ys);

// mean + sum_{i < n} <y - mean, axis_i> axis_i
Vector project_first_k(std::span<const double> y, const PcaBasis& basis, std::size_t n);

} // namespace idpm::latent
