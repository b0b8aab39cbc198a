#include "idpm/nn/matrix.hpp"

#include <cmath>
#include <string>

#include "idpm/errors.hpp"

namespace idpm::nn {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows * cols) {
        throw ShapeError("matrix payload has " + std::to_string(values_.size()) +
                         " values, expected " + std::to_string(rows * cols));
    }
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        m.set_row(r, rows[r]);
    }
    return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    std::vector<Vector> tmp;
    tmp.reserve(rows.size());
    for (const auto& r : rows) tmp.emplace_back(r);
    return from_rows(tmp);
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vector Matrix::row_vector(std::size_t r) const {
    auto s = row(r);
    return {s.begin(), s.end()};
}

void Matrix::set_row(std::size_t r, std::span<const double> v) {
    if (v.size() != cols_) {
        throw ShapeError("row has " + std::to_string(v.size()) + " entries, matrix has " +
                         std::to_string(cols_) + " columns");
    }
    std::copy(v.begin(), v.end(), values_.begin() + static_cast<std::ptrdiff_t>(r * cols_));
}

void Matrix::fill(double v) {
    std::fill(values_.begin(), values_.end(), v);
}

bool Matrix::all_finite() const noexcept {
    for (double v : values_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

Vector Matrix::apply(std::span<const double> x) const {
    if (x.size() != cols_) {
        throw ShapeError("apply: vector has " + std::to_string(x.size()) + " entries, matrix has " +
                         std::to_string(cols_) + " columns");
    }
    Vector y(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) y[r] = dot(row(r), x);
    return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
    require_same_size(a, b, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double distance(std::span<const double> a, std::span<const double> b) {
    require_same_size(a, b, "distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

void require_same_size(std::span<const double> a, std::span<const double> b, const char* what) {
    if (a.size() != b.size()) {
        throw ShapeError(std::string(what) + ": size mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
    }
}

} // namespace idpm::nn
