#include "idpm/eval/baselines.hpp"

#include <cmath>
#include <string>

#include "idpm/errors.hpp"

namespace idpm::eval {

RejectionResult rejection_oracle(const oracle::Embedder& embedder, std::span<const double> target, double tolerance,
                                 const DataSampler& data, std::size_t wanted, std::mt19937_64& rng,
                                 std::size_t max_draws) {
    if (!(tolerance > 0.0)) throw ConfigError("rejection_oracle: tolerance must be positive");
    if (wanted == 0) throw ConfigError("rejection_oracle: nothing requested");
    if (target.size() != embedder.output_dim()) throw ShapeError("rejection_oracle: target dimension mismatch");

    std::vector<Vector> kept;
    std::size_t draws = 0;
    while (kept.size() < wanted && draws < max_draws) {
        Vector x = data(rng);
        ++draws;
        if (nn::distance(embedder.embed(x), target) <= tolerance) kept.push_back(std::move(x));
    }
    const double rate = draws == 0 ? 0.0 : static_cast<double>(kept.size()) / static_cast<double>(draws);
    if (kept.empty()) {
        throw NumericalError("rejection_oracle: no sample accepted after " + std::to_string(draws) +
                             " draws (acceptance rate " + std::to_string(rate) + "); widen the tolerance or raise max_draws");
    }
    return {nn::Matrix::from_rows(kept), draws, rate};
}

GdResult whitebox_gd_invert(const oracle::Embedder& embedder, std::span<const double> target,
                            std::span<const double> x_init, const GdOptions& options) {
    if (!embedder.has_gradient()) throw StateError("whitebox_gd_invert: embedder '" + embedder.name() + "' has no gradient");
    if (target.size() != embedder.output_dim()) throw ShapeError("whitebox_gd_invert: target dimension mismatch");
    if (!(options.step_size > 0.0)) throw ConfigError("whitebox_gd_invert: step size must be positive");

    GdResult out;
    out.x.assign(x_init.begin(), x_init.end());
    std::size_t rising = 0;

    for (;;) {
        const Vector fx = embedder.embed(out.x);
        Vector residual(target.size());
        for (std::size_t i = 0; i < residual.size(); ++i) residual[i] = target[i] - fx[i];
        const double rnorm = nn::norm(residual);
        const double loss = 0.5 * rnorm * rnorm;
        if (!std::isfinite(loss)) {
            throw NumericalError("whitebox_gd_invert: loss became non-finite after " + std::to_string(out.steps) + " steps");
        }
        if (!out.loss_trace.empty() && loss > out.loss_trace.back()) {
            if (++rising >= options.divergence_window) {
                throw NumericalError("whitebox_gd_invert: loss increased for " + std::to_string(rising) +
                                     " consecutive steps (diverging; reduce the step size)");
            }
        } else {
            rising = 0;
        }
        out.loss_trace.push_back(loss);
        if (rnorm < options.tolerance) {
            out.converged = true;
            break;
        }
        if (out.steps >= options.max_steps) break;

        const nn::Matrix jac = embedder.jacobian(out.x); // k x d
        for (std::size_t j = 0; j < out.x.size(); ++j) {
            double g = 0.0;
            for (std::size_t i = 0; i < residual.size(); ++i) g += jac(i, j) * residual[i];
            out.x[j] += options.step_size * g;
        }
        ++out.steps;
    }
    return out;
}

} // namespace idpm::eval
