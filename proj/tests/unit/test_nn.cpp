#include <doctest.h>

#include <cmath>
#include <random>

#include "gradcheck.hpp"
#include "idpm/errors.hpp"
#include "idpm/nn/activation.hpp"
#include "idpm/nn/denoiser.hpp"
#include "idpm/nn/linear.hpp"
#include "idpm/nn/matrix.hpp"
#include "idpm/nn/optim.hpp"
#include "idpm/nn/stats.hpp"
#include "idpm/nn/time_embedding.hpp"

using namespace idpm;
using nn::Matrix;

TEST_CASE("sinusoidal embedding at t=0 is sines then cosines") {
    const Vector e = nn::sinusoidal_embed(0, 4);
    CHECK(e == Vector{0.0, 0.0, 1.0, 1.0});
}

TEST_CASE("sinusoidal embedding entries are bounded") {
    for (std::size_t t : {0u, 1u, 17u, 999u}) {
        for (double v : nn::sinusoidal_embed(t, 8)) {
            CHECK(v >= -1.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("sinusoidal embedding matches the closed form and separates steps") {
    const std::size_t dim = 64;
    const std::size_t half = dim / 2;
    const Vector e0 = nn::sinusoidal_embed(0, dim);
    const Vector e1 = nn::sinusoidal_embed(1, dim);
    for (std::size_t i = 0; i < half; ++i) {
        const double w = std::pow(10000.0, -static_cast<double>(i) / static_cast<double>(half));
        CHECK(e1[i] == doctest::Approx(std::sin(w)).epsilon(1e-12));
        CHECK(e1[half + i] == doctest::Approx(std::cos(w)).epsilon(1e-12));
    }
    CHECK(e0 != e1);
    CHECK(nn::distance(e0, e1) > 0.1);
}

TEST_CASE("sinusoidal embedding rejects odd or zero width") {
    CHECK_THROWS_AS(nn::sinusoidal_embed(3, 5), ConfigError);
    CHECK_THROWS_AS(nn::sinusoidal_embed(3, 0), ConfigError);
}

TEST_CASE("silu values and derivative") {
    CHECK(nn::silu(0.0) == 0.0);
    CHECK(nn::silu_grad(0.0) == doctest::Approx(0.5));
    CHECK(nn::silu(40.0) == doctest::Approx(40.0));
    CHECK(nn::silu(-40.0) == doctest::Approx(0.0));
    for (double x : {-3.0, -0.7, 0.2, 1.9}) {
        const double h = 1e-6;
        const double fd = (nn::silu(x + h) - nn::silu(x - h)) / (2 * h);
        CHECK(nn::silu_grad(x) == doctest::Approx(fd).epsilon(1e-8));
    }
}

TEST_CASE("percentile interpolates linearly between order statistics") {
    Vector v;
    for (int i = 1; i <= 100; ++i) v.push_back(i);
    CHECK(nn::percentile(v, 0.10) == doctest::Approx(10.9));
    CHECK(nn::percentile(v, 0.90) == doctest::Approx(90.1));
    CHECK(nn::percentile(v, 0.0) == 1.0);
    CHECK(nn::percentile(v, 1.0) == 100.0);
    CHECK_THROWS_AS(nn::percentile(Vector{}, 0.5), DomainError);
    CHECK_THROWS_AS(nn::percentile(v, 1.5), ConfigError);
}

TEST_CASE("linear layer forward matches a hand product") {
    nn::LinearLayer layer(2, 3);
    layer.weight() = Matrix::from_rows({{1, 2}, {3, 4}, {5, 6}});
    layer.bias() = {0.5, -0.5, 1.0};
    const Matrix out = layer.forward(Matrix::from_rows({{1, 1}, {2, -1}}));
    CHECK(out == Matrix::from_rows({{3.5, 6.5, 12.0}, {0.5, 1.5, 5.0}}));
}

TEST_CASE("linear layer shape errors") {
    nn::LinearLayer layer(2, 3);
    CHECK_THROWS_AS(layer.forward(Matrix(1, 3)), ShapeError);
}

namespace {

nn::DenoiserTopology small_topology(std::size_t attr_dim) {
    nn::DenoiserTopology t;
    t.data_dim = 2;
    t.id_dim = 3;
    t.attr_dim = attr_dim;
    t.time_embed_dim = 8;
    t.hidden_dims = {5, 4};
    return t;
}

} // namespace

TEST_CASE("fresh denoiser predicts zero noise") {
    nn::ConditionalDenoiser model(small_topology(0), 1);
    std::mt19937_64 rng(3);
    const auto batch = testing::random_batch(model.topology(), 6, 100, false, rng);
    const Matrix out = model.forward(batch);
    for (double v : out.values()) CHECK(v == 0.0);
}

TEST_CASE("denoiser forward is a pure function") {
    nn::ConditionalDenoiser model(small_topology(2), 1);
    std::mt19937_64 rng(5);
    testing::randomize_parameters(model, 0.5, rng);
    const auto batch = testing::random_batch(model.topology(), 4, 100, true, rng);
    CHECK(model.forward(batch) == model.forward(batch));
    nn::ConditionalDenoiser copy = model;
    CHECK(copy.forward(batch) == model.forward(batch));
}

TEST_CASE("zeroed identity projection removes the dependence on y") {
    nn::ConditionalDenoiser model(small_topology(0), 1);
    std::mt19937_64 rng(7);
    testing::randomize_parameters(model, 0.5, rng);
    model.id_proj().zero_parameters();
    auto batch = testing::random_batch(model.topology(), 4, 100, false, rng);
    const Matrix before = model.forward(batch);
    batch.y = testing::random_matrix(4, 3, rng);
    CHECK(model.forward(batch) == before);
}

TEST_CASE("denoiser rejects inconsistent inputs") {
    nn::ConditionalDenoiser model(small_topology(0), 1);
    std::mt19937_64 rng(1);
    auto batch = testing::random_batch(model.topology(), 3, 10, false, rng);
    batch.a = Matrix(3, 1);
    CHECK_THROWS_AS(model.forward(batch), ShapeError);
    batch.a.reset();
    batch.y = Matrix(3, 2);
    CHECK_THROWS_AS(model.forward(batch), ShapeError);
    CHECK_THROWS_AS(model.backward(Matrix(3, 2)), StateError);
}

TEST_CASE("zero upstream gradient gives zero parameter gradients") {
    nn::ConditionalDenoiser model(small_topology(2), 1);
    std::mt19937_64 rng(11);
    testing::randomize_parameters(model, 0.5, rng);
    const auto batch = testing::random_batch(model.topology(), 4, 50, true, rng);
    model.forward_train(batch);
    model.backward(Matrix(4, 2));
    for (const auto& p : model.parameters()) {
        for (double g : p.grad) CHECK(g == 0.0);
    }
}

TEST_CASE("attribute projection receives no gradient when a is absent") {
    nn::ConditionalDenoiser model(small_topology(2), 1);
    std::mt19937_64 rng(13);
    testing::randomize_parameters(model, 0.5, rng);
    const auto batch = testing::random_batch(model.topology(), 4, 50, false, rng);
    model.forward_train(batch);
    model.backward(testing::random_matrix(4, 2, rng));
    bool saw_attr = false;
    double other = 0.0;
    for (const auto& p : model.parameters()) {
        if (p.name.rfind("attr_proj", 0) == 0) {
            saw_attr = true;
            for (double g : p.grad) CHECK(g == 0.0);
        } else {
            for (double g : p.grad) other += std::abs(g);
        }
    }
    CHECK(saw_attr);
    CHECK(other > 0.0);
}

TEST_CASE("analytic gradients match central differences on every parameter") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        for (std::size_t attr : {0u, 2u}) {
            nn::ConditionalDenoiser model(small_topology(attr), seed);
            std::mt19937_64 rng(seed * 101 + attr);
            testing::randomize_parameters(model, 0.6, rng);
            const auto batch = testing::random_batch(model.topology(), 3, 100, attr > 0, rng);
            const Matrix upstream = testing::random_matrix(3, 2, rng);
            const auto res = testing::gradient_check(model, batch, upstream, 1e-6, 100000, rng);
            INFO("seed " << seed << " worst " << res.worst_parameter);
            CHECK(res.checked == model.param_count());
            CHECK(res.max_relative_error < 1e-5);
        }
    }
}

TEST_CASE("relative error treats tiny gradients on an absolute scale") {
    CHECK(testing::relative_error(1.0, 1.0) == 0.0);
    CHECK(testing::relative_error(2.0, 1.0) == doctest::Approx(0.5));
    CHECK(testing::relative_error(0.0, 1e-9) == doctest::Approx(1e-5));
}

TEST_CASE("parameter count and flat round trip") {
    const auto topo = small_topology(2);
    // input 2x5+5, hidden 5x4+4, output 4x2+2, id 3x8+8, attr 2x8+8, inject 8x5+5 and 8x4+4
    CHECK(topo.param_count() == 15 + 24 + 10 + 32 + 24 + 45 + 36);
    nn::ConditionalDenoiser model(topo, 9);
    std::mt19937_64 rng(2);
    testing::randomize_parameters(model, 1.0, rng);
    const Vector flat = model.flat_parameters();
    nn::ConditionalDenoiser other(topo, 10);
    other.set_flat_parameters(flat);
    CHECK(other.flat_parameters() == flat);
    CHECK_THROWS_AS(other.set_flat_parameters(Vector(3)), ShapeError);
}

TEST_CASE("he-uniform initialization bounds and zero output layer") {
    nn::DenoiserTopology topo;
    nn::ConditionalDenoiser model(topo, 4);
    const double bound = std::sqrt(6.0 / 2.0);
    for (double w : model.input_proj().weight().values()) CHECK(std::abs(w) <= bound);
    for (double b : model.input_proj().bias()) CHECK(b == 0.0);
    for (double w : model.output_layer().weight().values()) CHECK(w == 0.0);
    nn::ConditionalDenoiser same(topo, 4);
    CHECK(same.flat_parameters() == model.flat_parameters());
}

TEST_CASE("adam first step with zero gradient leaves parameters unchanged") {
    Vector value{0.3, -1.0};
    Vector grad{0.0, 0.0};
    std::vector<nn::ParamView> params{{"p", value, grad}};
    auto state = nn::AdamState::for_parameters(2, 0.1);
    nn::adam_step(params, state);
    CHECK(value == Vector{0.3, -1.0});
}

TEST_CASE("adam bias-corrected first step moves by the learning rate") {
    Vector value{0.0};
    Vector grad{1.0};
    std::vector<nn::ParamView> params{{"p", value, grad}};
    auto state = nn::AdamState::for_parameters(1, 0.1);
    nn::adam_step(params, state);
    // m_hat = 1, v_hat = 1 after correction
    const double expected = -0.1 * 1.0 / (1.0 + 1e-8);
    CHECK(value[0] == doctest::Approx(expected).epsilon(1e-14));
    CHECK(grad[0] == 0.0);
}

TEST_CASE("adam moves monotonically against a constant gradient") {
    Vector value{1.0, 1.0};
    Vector grad{0.0, 0.0};
    std::vector<nn::ParamView> params{{"p", value, grad}};
    auto state = nn::AdamState::for_parameters(2, 0.01);
    double prev0 = value[0];
    double prev1 = value[1];
    for (int i = 0; i < 2; ++i) {
        grad = {2.0, -3.0};
        nn::adam_step(params, state);
        CHECK(value[0] < prev0);
        CHECK(value[1] > prev1);
        prev0 = value[0];
        prev1 = value[1];
    }
}

TEST_CASE("ema update rules") {
    nn::EmaParams zero(0.0, Vector{5.0});
    nn::ema_update(zero, Vector{2.0});
    CHECK(zero.shadow == Vector{2.0});
    nn::EmaParams one(1.0, Vector{5.0});
    nn::ema_update(one, Vector{2.0});
    CHECK(one.shadow == Vector{5.0});
    nn::EmaParams half(0.5, Vector{0.0});
    nn::ema_update(half, Vector{2.0});
    CHECK(half.shadow == Vector{1.0});
    CHECK_THROWS_AS(nn::EmaParams(1.5, Vector{0.0}), ConfigError);
    CHECK_THROWS_AS(nn::ema_update(half, Vector{1.0, 2.0}), ShapeError);
}
