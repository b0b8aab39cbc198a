#include "idpm/nn/linear.hpp"

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "idpm/errors.hpp"

namespace idpm::nn {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMajor>;
using MutMap = Eigen::Map<RowMajor>;

ConstMap view(const Matrix& m) { return {m.data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())}; }
MutMap view(Matrix& m) { return {m.data(), static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())}; }

} // namespace

LinearLayer::LinearLayer(std::size_t in_dim, std::size_t out_dim)
    : weight_(out_dim, in_dim), bias_(out_dim, 0.0), weight_grad_(out_dim, in_dim), bias_grad_(out_dim, 0.0) {
    if (in_dim == 0 || out_dim == 0) {
        throw ConfigError("linear layer dimensions must be positive");
    }
}

void LinearLayer::init_uniform(std::mt19937_64& rng) {
    const double bound = std::sqrt(6.0 / static_cast<double>(in_dim()));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (double& w : weight_.values()) w = dist(rng);
    std::fill(bias_.begin(), bias_.end(), 0.0);
}

void LinearLayer::zero_parameters() {
    weight_.fill(0.0);
    std::fill(bias_.begin(), bias_.end(), 0.0);
}

Matrix LinearLayer::forward(const Matrix& input) const {
    if (input.cols() != in_dim()) {
        throw ShapeError("linear forward: input has " + std::to_string(input.cols()) +
                         " columns, layer expects " + std::to_string(in_dim()));
    }
    Matrix out(input.rows(), out_dim());
    auto o = view(out);
    o.noalias() = view(input) * view(weight_).transpose();
    const Eigen::Map<const Eigen::RowVectorXd> b(bias_.data(), static_cast<Eigen::Index>(bias_.size()));
    o.rowwise() += b;
    return out;
}

void LinearLayer::backward(const Matrix& input, const Matrix& grad_output, Matrix* grad_input) {
    if (input.cols() != in_dim() || grad_output.cols() != out_dim() || input.rows() != grad_output.rows()) {
        throw ShapeError("linear backward: input/gradient shapes do not match the layer");
    }
    const auto go = view(grad_output);
    view(weight_grad_).noalias() += go.transpose() * view(input);
    Eigen::Map<Eigen::RowVectorXd> bg(bias_grad_.data(), static_cast<Eigen::Index>(bias_grad_.size()));
    bg += go.colwise().sum();
    if (grad_input != nullptr) {
        *grad_input = Matrix(input.rows(), in_dim());
        view(*grad_input).noalias() = go * view(weight_);
    }
}

void LinearLayer::zero_grad() {
    weight_grad_.fill(0.0);
    std::fill(bias_grad_.begin(), bias_grad_.end(), 0.0);
}

void LinearLayer::append_params(const std::string& prefix, std::vector<ParamView>& out) {
    out.push_back({prefix + ".weight", weight_.values(), weight_grad_.values()});
    out.push_back({prefix + ".bias", bias_, bias_grad_});
}

} // namespace idpm::nn
