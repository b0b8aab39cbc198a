#include "idpm/nn/denoiser.hpp"

#include <random>
#include <string>

#include "idpm/errors.hpp"
#include "idpm/nn/activation.hpp"
#include "idpm/nn/time_embedding.hpp"

namespace idpm::nn {

namespace {

std::size_t linear_params(std::size_t in, std::size_t out) {
    return in * out + out;
}

void silu_inplace(const Matrix& pre, Matrix& act) {
    act = Matrix(pre.rows(), pre.cols());
    auto src = pre.values();
    auto dst = act.values();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = silu(src[i]);
}

void add_into(Matrix& dst, const Matrix& src) {
    auto d = dst.values();
    auto s = src.values();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] += s[i];
}

// grad *= silu'(pre), elementwise
void mul_silu_grad(Matrix& grad, const Matrix& pre) {
    auto g = grad.values();
    auto p = pre.values();
    for (std::size_t i = 0; i < g.size(); ++i) g[i] *= silu_grad(p[i]);
}

} // namespace

void DenoiserTopology::validate() const {
    if (data_dim == 0) throw ConfigError("denoiser: data_dim must be positive");
    if (id_dim == 0) throw ConfigError("denoiser: id_dim must be positive");
    if (time_embed_dim == 0 || time_embed_dim % 2 != 0) {
        throw ConfigError("denoiser: time_embed_dim must be a positive even number");
    }
    if (hidden_dims.empty()) throw ConfigError("denoiser: at least one hidden layer is required");
    for (std::size_t h : hidden_dims) {
        if (h == 0) throw ConfigError("denoiser: hidden widths must be positive");
    }
}

std::size_t DenoiserTopology::param_count() const {
    std::size_t n = linear_params(data_dim, hidden_dims.front());
    for (std::size_t i = 1; i < hidden_dims.size(); ++i) n += linear_params(hidden_dims[i - 1], hidden_dims[i]);
    n += linear_params(hidden_dims.back(), data_dim);
    n += linear_params(id_dim, time_embed_dim);
    if (attr_dim > 0) n += linear_params(attr_dim, time_embed_dim);
    for (std::size_t h : hidden_dims) n += linear_params(time_embed_dim, h);
    return n;
}

ConditionalDenoiser::ConditionalDenoiser(DenoiserTopology topology, std::uint64_t seed)
    : topology_(std::move(topology)) {
    topology_.validate();
    const auto& hd = topology_.hidden_dims;
    const std::size_t e = topology_.time_embed_dim;

    input_proj_ = LinearLayer(topology_.data_dim, hd.front());
    for (std::size_t i = 1; i < hd.size(); ++i) hidden_.emplace_back(hd[i - 1], hd[i]);
    output_ = LinearLayer(hd.back(), topology_.data_dim);
    id_proj_ = LinearLayer(topology_.id_dim, e);
    if (topology_.attr_dim > 0) attr_proj_.emplace(topology_.attr_dim, e);
    for (std::size_t h : hd) inject_.emplace_back(e, h);

    std::mt19937_64 rng(seed);
    input_proj_.init_uniform(rng);
    for (auto& l : hidden_) l.init_uniform(rng);
    output_.zero_parameters();
    id_proj_.init_uniform(rng);
    if (attr_proj_) attr_proj_->init_uniform(rng);
    for (auto& l : inject_) l.init_uniform(rng);
}

void ConditionalDenoiser::check_batch(const DenoiserBatch& batch) const {
    const std::size_t b = batch.x.rows();
    if (batch.x.cols() != topology_.data_dim) {
        throw ShapeError("denoiser: x has " + std::to_string(batch.x.cols()) + " columns, model expects " +
                         std::to_string(topology_.data_dim));
    }
    if (batch.y.cols() != topology_.id_dim || batch.y.rows() != b) {
        throw ShapeError("denoiser: y must be " + std::to_string(b) + " x " + std::to_string(topology_.id_dim));
    }
    if (batch.steps.size() != b) {
        throw ShapeError("denoiser: one step index per row is required");
    }
    if (batch.a) {
        if (!attr_proj_) throw ShapeError("denoiser: attribute vector given to a model without attribute conditioning");
        if (batch.a->cols() != topology_.attr_dim || batch.a->rows() != b) {
            throw ShapeError("denoiser: a must be " + std::to_string(b) + " x " + std::to_string(topology_.attr_dim));
        }
    }
}

Matrix ConditionalDenoiser::run(const DenoiserBatch& batch, Activations* cache) const {
    check_batch(batch);
    const std::size_t b = batch.x.rows();
    const std::size_t e = topology_.time_embed_dim;

    Matrix cond_pre = id_proj_.forward(batch.y);
    if (batch.a) add_into(cond_pre, attr_proj_->forward(*batch.a));
    for (std::size_t r = 0; r < b; ++r) {
        const auto temb = sinusoidal_embed(static_cast<double>(batch.steps[r]), e);
        auto row = cond_pre.row(r);
        for (std::size_t j = 0; j < e; ++j) row[j] += temb[j];
    }
    Matrix cond_act;
    silu_inplace(cond_pre, cond_act);

    const std::size_t n = topology_.hidden_dims.size();
    std::vector<Matrix> pre(n), act(n);
    for (std::size_t l = 0; l < n; ++l) {
        pre[l] = l == 0 ? input_proj_.forward(batch.x) : hidden_[l - 1].forward(act[l - 1]);
        add_into(pre[l], inject_[l].forward(cond_act));
        silu_inplace(pre[l], act[l]);
    }
    Matrix out = output_.forward(act.back());

    if (cache != nullptr) {
        cache->x = batch.x;
        cache->y = batch.y;
        cache->a = batch.a;
        cache->cond_pre = std::move(cond_pre);
        cache->cond_act = std::move(cond_act);
        cache->pre = std::move(pre);
        cache->act = std::move(act);
    }
    return out;
}

Matrix ConditionalDenoiser::forward(const DenoiserBatch& batch) const {
    return run(batch, nullptr);
}

Vector ConditionalDenoiser::predict(std::span<const double> x_t, std::span<const double> y,
                                    std::optional<std::span<const double>> a, std::size_t step) const {
    DenoiserBatch batch{Matrix(1, x_t.size(), Vector(x_t.begin(), x_t.end())),
                        Matrix(1, y.size(), Vector(y.begin(), y.end())), std::nullopt, {step}};
    if (a) batch.a = Matrix(1, a->size(), Vector(a->begin(), a->end()));
    return forward(batch).row_vector(0);
}

Matrix ConditionalDenoiser::forward_train(const DenoiserBatch& batch) {
    Activations acts;
    Matrix out = run(batch, &acts);
    cache_ = std::move(acts);
    return out;
}

void ConditionalDenoiser::backward(const Matrix& upstream) {
    if (!cache_) {
        throw StateError("denoiser backward called without a matching forward_train");
    }
    Activations acts = std::move(*cache_);
    cache_.reset();
    if (upstream.rows() != acts.x.rows() || upstream.cols() != topology_.data_dim) {
        throw ShapeError("denoiser backward: upstream gradient shape does not match the cached forward pass");
    }

    const std::size_t n = topology_.hidden_dims.size();
    Matrix grad_h;
    output_.backward(acts.act.back(), upstream, &grad_h);

    Matrix grad_cond(acts.cond_act.rows(), acts.cond_act.cols());
    for (std::size_t l = n; l-- > 0;) {
        mul_silu_grad(grad_h, acts.pre[l]); // now d/d(pre_l)
        Matrix grad_c;
        inject_[l].backward(acts.cond_act, grad_h, &grad_c);
        add_into(grad_cond, grad_c);
        if (l == 0) {
            input_proj_.backward(acts.x, grad_h, nullptr);
        } else {
            Matrix grad_prev;
            hidden_[l - 1].backward(acts.act[l - 1], grad_h, &grad_prev);
            grad_h = std::move(grad_prev);
        }
    }

    mul_silu_grad(grad_cond, acts.cond_pre);
    id_proj_.backward(acts.y, grad_cond, nullptr);
    if (acts.a) attr_proj_->backward(*acts.a, grad_cond, nullptr);
}

void ConditionalDenoiser::zero_grad() {
    for (auto& p : parameters()) std::fill(p.grad.begin(), p.grad.end(), 0.0);
}

std::vector<ParamView> ConditionalDenoiser::parameters() {
    std::vector<ParamView> out;
    input_proj_.append_params("input_proj", out);
    for (std::size_t i = 0; i < hidden_.size(); ++i) hidden_[i].append_params("hidden." + std::to_string(i), out);
    output_.append_params("output", out);
    id_proj_.append_params("id_proj", out);
    if (attr_proj_) attr_proj_->append_params("attr_proj", out);
    for (std::size_t i = 0; i < inject_.size(); ++i) inject_[i].append_params("inject." + std::to_string(i), out);
    return out;
}

std::vector<const LinearLayer*> ConditionalDenoiser::ordered_layers() const {
    std::vector<const LinearLayer*> layers{&input_proj_};
    for (const auto& l : hidden_) layers.push_back(&l);
    layers.push_back(&output_);
    layers.push_back(&id_proj_);
    if (attr_proj_) layers.push_back(&*attr_proj_);
    for (const auto& l : inject_) layers.push_back(&l);
    return layers;
}

Vector ConditionalDenoiser::flat_parameters() const {
    Vector flat;
    flat.reserve(param_count());
    for (const LinearLayer* l : ordered_layers()) {
        auto w = l->weight().values();
        flat.insert(flat.end(), w.begin(), w.end());
        flat.insert(flat.end(), l->bias().begin(), l->bias().end());
    }
    return flat;
}

void ConditionalDenoiser::set_flat_parameters(std::span<const double> flat) {
    if (flat.size() != param_count()) {
        throw ShapeError("denoiser: flat parameter vector has " + std::to_string(flat.size()) +
                         " entries, topology implies " + std::to_string(param_count()));
    }
    std::size_t off = 0;
    for (auto& p : parameters()) {
        std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(off), p.value.size(), p.value.begin());
        off += p.value.size();
    }
}

} // namespace idpm::nn
