#include "idpm/diffusion/trainer.hpp"

#include <cmath>
#include <string>

#include "idpm/diffusion/ops.hpp"
#include "idpm/errors.hpp"

namespace idpm::diffusion {

void TrainConfig::validate() const {
    if (diffusion_steps == 0) throw ConfigError("train: diffusion_steps must be at least 1");
    if (!(cond_dropout >= 0.0 && cond_dropout <= 1.0)) throw ConfigError("train: cond_dropout must lie in [0, 1]");
    if (batch_size == 0) throw ConfigError("train: batch_size must be positive");
    if (!(learning_rate > 0.0)) throw ConfigError("train: learning_rate must be positive");
    if (!(ema_rate >= 0.0 && ema_rate <= 1.0)) throw ConfigError("train: ema_rate must lie in [0, 1]");
}

void TrainingSet::validate() const {
    if (x.rows() == 0) throw ConfigError("training set is empty");
    if (y.rows() != x.rows()) throw ShapeError("training set: x and y row counts differ");
    if (a && a->rows() != x.rows()) throw ShapeError("training set: x and a row counts differ");
}

LossRecord training_loss(nn::ConditionalDenoiser& model, const nn::Matrix& x0, const nn::Matrix& y,
                         const std::optional<nn::Matrix>& a, const NoiseSchedule& schedule, double dropout,
                         std::mt19937_64& rng) {
    const std::size_t b = x0.rows();
    const std::size_t d = x0.cols();
    if (b == 0) throw ShapeError("training_loss: empty batch");
    if (y.rows() != b || (a && a->rows() != b)) throw ShapeError("training_loss: batch row counts differ");

    std::uniform_int_distribution<std::size_t> step_dist(1, schedule.steps());
    std::normal_distribution<double> normal(0.0, 1.0);
    std::bernoulli_distribution drop(dropout);

    LossRecord rec;
    rec.steps.resize(b);
    rec.noise = nn::Matrix(b, d);
    rec.y_fed = y;
    rec.a_fed = a;
    rec.y_dropped.assign(b, false);
    rec.a_dropped.assign(b, false);

    nn::DenoiserBatch batch;
    batch.x = nn::Matrix(b, d);
    for (std::size_t r = 0; r < b; ++r) {
        const std::size_t t = step_dist(rng);
        rec.steps[r] = t;
        auto eps = rec.noise.row(r);
        for (double& e : eps) e = normal(rng);
        batch.x.set_row(r, q_sample(x0.row(r), t, eps, schedule));

        if (drop(rng)) {
            rec.y_dropped[r] = true;
            for (double& v : rec.y_fed.row(r)) v = null_identity_value;
        }
        if (a && drop(rng)) {
            rec.a_dropped[r] = true;
            for (double& v : rec.a_fed->row(r)) v = null_attribute_value;
        }
    }
    batch.y = rec.y_fed;
    batch.a = rec.a_fed;
    batch.steps = rec.steps;

    const nn::Matrix pred = model.forward_train(batch);
    rec.loss = noise_mse(rec.noise, pred);

    nn::Matrix upstream(b, d);
    const double scale = 2.0 / static_cast<double>(b * d);
    auto u = upstream.values();
    auto p = pred.values();
    auto n = rec.noise.values();
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = scale * (p[i] - n[i]);
    model.backward(upstream);
    return rec;
}

Trainer::Trainer(nn::ConditionalDenoiser& model, NoiseSchedule schedule, TrainConfig config)
    : model_(model),
      schedule_(std::move(schedule)),
      config_(config),
      adam_(nn::AdamState::for_parameters(model.param_count(), config.learning_rate)),
      ema_(config.ema_rate, model.flat_parameters()),
      rng_(config.seed) {
    config_.validate();
}

double Trainer::step(const nn::Matrix& x0, const nn::Matrix& y, const std::optional<nn::Matrix>& a) {
    model_.zero_grad();
    const LossRecord rec = training_loss(model_, x0, y, a, schedule_, config_.cond_dropout, rng_);
    if (!std::isfinite(rec.loss)) {
        throw NumericalError("training loss became non-finite at optimizer step " + std::to_string(adam_.step + 1));
    }
    const auto params = model_.parameters();
    nn::adam_step(params, adam_);
    nn::ema_update(ema_, model_.flat_parameters());
    model_.mark_fitted();
    return rec.loss;
}

std::vector<double> Trainer::fit(const TrainingSet& data, const Progress& progress) {
    data.validate();
    const std::size_t bs = config_.batch_size;
    const std::size_t d = data.x.cols();
    std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);

    std::vector<double> losses;
    losses.reserve(config_.total_batches);
    nn::Matrix x(bs, d), y(bs, data.y.cols());
    std::optional<nn::Matrix> a;
    if (data.a) a = nn::Matrix(bs, data.a->cols());
    for (std::size_t it = 0; it < config_.total_batches; ++it) {
        for (std::size_t r = 0; r < bs; ++r) {
            const std::size_t i = pick(rng_);
            x.set_row(r, data.x.row(i));
            y.set_row(r, data.y.row(i));
            if (a) a->set_row(r, data.a->row(i));
        }
        losses.push_back(step(x, y, a));
        if (progress) progress(it + 1, losses.back());
    }
    return losses;
}

nn::ConditionalDenoiser Trainer::ema_model() const {
    nn::ConditionalDenoiser copy = model_;
    copy.set_flat_parameters(ema_.shadow);
    return copy;
}

} // namespace idpm::diffusion
