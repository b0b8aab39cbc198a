#include "idpm/oracle/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "idpm/errors.hpp"

namespace idpm::oracle {

double angular_distance(std::span<const double> y1, std::span<const double> y2,
                        std::optional<std::span<const double>> mean) {
    nn::require_same_size(y1, y2, "angular_distance");
    Vector a(y1.begin(), y1.end());
    Vector b(y2.begin(), y2.end());
    if (mean) {
        nn::require_same_size(y1, *mean, "angular_distance mean");
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] -= (*mean)[i];
            b[i] -= (*mean)[i];
        }
    }
    const double na = nn::norm(a);
    const double nb = nn::norm(b);
    if (na == 0.0 || nb == 0.0) throw DomainError("angular_distance: zero vector");
    const double c = std::clamp(nn::dot(a, b) / (na * nb), -1.0, 1.0);
    return std::acos(c) / std::numbers::pi;
}

Vector mean_embedding(const std::vector<Vector>& ys) {
    if (ys.empty()) throw DomainError("mean_embedding: empty list");
    Vector m(ys.front().size(), 0.0);
    for (const auto& y : ys) {
        nn::require_same_size(m, y, "mean_embedding");
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += y[i];
    }
    for (double& v : m) v /= static_cast<double>(ys.size());
    return m;
}

Vector mean_embedding(const nn::Matrix& ys) {
    if (ys.rows() == 0) throw DomainError("mean_embedding: empty list");
    Vector m(ys.cols(), 0.0);
    for (std::size_t r = 0; r < ys.rows(); ++r) {
        auto row = ys.row(r);
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += row[i];
    }
    for (double& v : m) v /= static_cast<double>(ys.rows());
    return m;
}

} // namespace idpm::oracle
