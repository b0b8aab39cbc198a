#include "idpm/latent/pca.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "idpm/errors.hpp"
#include "idpm/oracle/distance.hpp"

namespace idpm::latent {

PcaBasis fit_pca(const nn::Matrix& ys) {
    if (ys.rows() < 2) throw DomainError("fit_pca: at least two samples are required");
    const std::size_t n = ys.rows();
    const std::size_t k = ys.cols();

    PcaBasis basis;
    basis.mean = oracle::mean_embedding(ys);

    Eigen::MatrixXd centered(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < k; ++c) {
            centered(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = ys(r, c) - basis.mean[c];
        }
    }
    const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw NumericalError("fit_pca: eigendecomposition did not converge");

    // Eigen returns ascending eigenvalues.
    for (Eigen::Index i = static_cast<Eigen::Index>(k); i-- > 0;) {
        Vector axis(k);
        std::size_t largest = 0;
        for (std::size_t c = 0; c < k; ++c) {
            axis[c] = solver.eigenvectors()(static_cast<Eigen::Index>(c), i);
            if (std::abs(axis[c]) > std::abs(axis[largest])) largest = c;
        }
        if (axis[largest] < 0.0) {
            for (double& v : axis) v = -v;
        }
        basis.axes.push_back(std::move(axis));
        basis.eigenvalues.push_back(std::max(0.0, solver.eigenvalues()(i)));
    }
    return basis;
}

Vector project_first_k(std::span<const double> y, const PcaBasis& basis, std::size_t n) {
    nn::require_same_size(y, basis.mean, "project_first_k");
    if (n > basis.axes.size()) {
        throw ConfigError("project_first_k: n = " + std::to_string(n) + " exceeds the " +
                          std::to_string(basis.axes.size()) + " available axes");
    }
    Vector centered(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) centered[i] = y[i] - basis.mean[i];
    Vector out = basis.mean;
    for (std::size_t a = 0; a < n; ++a) {
        const double coef = nn::dot(centered, basis.axes[a]);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += coef * basis.axes[a][i];
    }
    return out;
}

} // namespace idpm::latent
