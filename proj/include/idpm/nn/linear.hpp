#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "idpm/nn/matrix.hpp"

namespace idpm::nn {

// A named parameter tensor viewed together with its gradient accumulator.
struct ParamView {
    std::string name;
    std::span<double> value;
    std::span<double> grad;
};

// Affine map out = W in + b applied row-wise to a batch.
class LinearLayer {
public:
    LinearLayer() = default;
    LinearLayer(std::size_t in_dim, std::size_t out_dim);

    std::size_t in_dim() const noexcept { return weight_.cols(); }
    std::size_t out_dim() const noexcept { return weight_.rows(); }
    std::size_t param_count() const noexcept { return weight_.size() + bias_.size(); }

    // Uniform in [-sqrt(6 / fan_in), sqrt(6 / fan_in)], bias zero.
    void init_uniform(std::mt19937_64& rng);
    void zero_parameters();

    // batch x in_dim  ->  batch x out_dim
    Matrix forward(const Matrix& input) const;

    // Accumulates dL/dW and dL/db for the given upstream gradient. When
    // grad_input is non-null it receives dL/d(input).
    void backward(const Matrix& input, const Matrix& grad_output, Matrix* grad_input);

    void zero_grad();

    Matrix& weight() noexcept { return weight_; }
    const Matrix& weight() const noexcept { return weight_; }
    Vector& bias() noexcept { return bias_; }
    const Vector& bias() const noexcept { return bias_; }
    const Matrix& weight_grad() const noexcept { return weight_grad_; }
    const Vector& bias_grad() const noexcept { return bias_grad_; }

    void append_params(const std::string& prefix, std::vector<ParamView>& out);

private:
    Matrix weight_;
    Vector bias_;
    Matrix weight_grad_;
    Vector bias_grad_;
};

} // namespace idpm::nn
