#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace idpm {

using Vector = std::vector<double>;

namespace nn {

// Dense row-major matrix of doubles. Point sets throughout the library are
// stored one sample per row.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

    static Matrix from_rows(const std::vector<Vector>& rows);
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const { return {values_.data() + r * cols_, cols_}; }
    Vector row_vector(std::size_t r) const;
    void set_row(std::size_t r, std::span<const double> v);

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }
    double* data() noexcept { return values_.data(); }
    const double* data() const noexcept { return values_.data(); }

    void fill(double v);
    bool all_finite() const noexcept;

    // Matrix-vector product y = M x.
    Vector apply(std::span<const double> x) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v);
double distance(std::span<const double> a, std::span<const double> b);

void require_same_size(std::span<const double> a, std::span<const double> b, const char* what);

} // namespace nn
} // namespace idpm
