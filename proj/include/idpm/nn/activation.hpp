#pragma once

namespace idpm::nn {

double sigmoid(double x);

// x * sigmoid(x)
double silu(double x);

// d/dx silu(x) = sigmoid(x) * (1 + x * (1 - sigmoid(x)))
double silu_grad(double x);

} // namespace idpm::nn
