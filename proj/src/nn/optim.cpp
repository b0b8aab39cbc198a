#include "idpm/nn/optim.hpp"

#include <cmath>
#include <string>

#include "idpm/errors.hpp"

namespace idpm::nn {

namespace {

void check_rate(double rate) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
        throw ConfigError("EMA rate must lie in [0, 1], got " + std::to_string(rate));
    }
}

} // namespace

AdamState AdamState::for_parameters(std::size_t count, double learning_rate) {
    AdamState s;
    s.learning_rate = learning_rate;
    s.first_moment.assign(count, 0.0);
    s.second_moment.assign(count, 0.0);
    return s;
}

void adam_step(std::span<const ParamView> params, AdamState& state) {
    std::size_t total = 0;
    for (const auto& p : params) {
        if (p.value.size() != p.grad.size()) throw ShapeError("adam: gradient shape differs from parameter " + p.name);
        total += p.value.size();
    }
    if (total != state.first_moment.size() || total != state.second_moment.size()) {
        throw ShapeError("adam: optimizer state holds " + std::to_string(state.first_moment.size()) +
                         " entries, parameters have " + std::to_string(total));
    }

    ++state.step;
    const double t = static_cast<double>(state.step);
    const double bc1 = 1.0 - std::pow(state.beta1, t);
    const double bc2 = 1.0 - std::pow(state.beta2, t);
    const double b1 = state.beta1;
    const double b2 = state.beta2;

    std::size_t off = 0;
    for (const auto& p : params) {
        double* m = state.first_moment.data() + off;
        double* v = state.second_moment.data() + off;
        for (std::size_t i = 0; i < p.value.size(); ++i) {
            const double g = p.grad[i];
            m[i] = b1 * m[i] + (1.0 - b1) * g;
            v[i] = b2 * v[i] + (1.0 - b2) * g * g;
            const double m_hat = m[i] / bc1;
            const double v_hat = v[i] / bc2;
            p.value[i] -= state.learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
            p.grad[i] = 0.0;
        }
        off += p.value.size();
    }
}

EmaParams::EmaParams(double rate_, Vector initial) : rate(rate_), shadow(std::move(initial)) {
    check_rate(rate);
}

void ema_update(EmaParams& ema, std::span<const double> params) {
    check_rate(ema.rate);
    require_same_size(ema.shadow, params, "ema_update");
    const double r = ema.rate;
    for (std::size_t i = 0; i < params.size(); ++i) {
        ema.shadow[i] = r * ema.shadow[i] + (1.0 - r) * params[i];
    }
}

} // namespace idpm::nn
