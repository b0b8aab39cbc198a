#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "idpm/errors.hpp"
#include "idpm/oracle/dataset.hpp"
#include "idpm/oracle/distance.hpp"
#include "idpm/oracle/embedder.hpp"

using namespace idpm;
using namespace idpm::oracle;
using nn::Matrix;

TEST_CASE("radius embedder") {
    const auto e = radius_embedder(2);
    CHECK(e->embed(Vector{3.0, 4.0}) == Vector{5.0});
    CHECK(e->embed(Vector{0.0, 0.0}) == Vector{0.0});
    CHECK_THROWS_AS(e->jacobian(Vector{0.0, 0.0}), DomainError);
    const double th = 0.7;
    const Vector x{1.2, -0.4};
    const Vector rot{std::cos(th) * x[0] - std::sin(th) * x[1], std::sin(th) * x[0] + std::cos(th) * x[1]};
    CHECK(e->embed(rot)[0] == doctest::Approx(e->embed(x)[0]).epsilon(1e-14));
    CHECK_THROWS_AS(e->embed(Vector{1.0, 2.0, 3.0}), ShapeError);
    CHECK_THROWS_AS(radius_embedder(1), ConfigError);
}

TEST_CASE("radius embedder jacobian is the unit radial vector") {
    const auto e = radius_embedder(3);
    const Matrix j = e->jacobian(Vector{2.0, 0.0, 0.0});
    CHECK(j == Matrix::from_rows({{1.0, 0.0, 0.0}}));
}

TEST_CASE("frozen mlp embedder lies on the unit sphere and is seeded") {
    const auto a = frozen_mlp_embedder(4, 6, 11);
    const auto b = frozen_mlp_embedder(4, 6, 11);
    const auto c = frozen_mlp_embedder(4, 6, 12);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n;
    std::size_t differ = 0;
    for (int i = 0; i < 20; ++i) {
        const Vector x{n(rng), n(rng), n(rng), n(rng)};
        const Vector ya = a->embed(x);
        CHECK(std::abs(nn::norm(ya) - 1.0) < 1e-12);
        CHECK(ya == b->embed(x));
        if (nn::distance(ya, c->embed(x)) > 1e-6) ++differ;
    }
    CHECK(differ == 20);
    CHECK_FALSE(a->has_gradient());
    CHECK_THROWS_AS(a->jacobian(Vector(4)), StateError);
}

TEST_CASE("linear embedder") {
    const auto id = linear_embedder(Matrix::identity(3));
    CHECK(id->embed(Vector{1.0, -2.0, 0.5}) == Vector{1.0, -2.0, 0.5});

    const Matrix A = Matrix::from_rows({{1.0, 2.0, -1.0}, {0.5, 0.0, 3.0}});
    const auto e = linear_embedder(A);
    const Vector x1{0.2, -1.0, 4.0};
    const Vector x2{1.5, 0.25, -2.0};
    const Vector sum{x1[0] + x2[0], x1[1] + x2[1], x1[2] + x2[2]};
    const Vector lhs = e->embed(sum);
    const Vector r1 = e->embed(x1);
    const Vector r2 = e->embed(x2);
    for (std::size_t i = 0; i < 2; ++i) CHECK(lhs[i] == doctest::Approx(r1[i] + r2[i]).epsilon(1e-14));

    const Matrix j = e->jacobian(x1);
    const double h = 1e-6;
    for (std::size_t c = 0; c < 3; ++c) {
        Vector up = x1, down = x1;
        up[c] += h;
        down[c] -= h;
        const Vector fu = e->embed(up), fd = e->embed(down);
        for (std::size_t r = 0; r < 2; ++r) {
            const double numeric = (fu[r] - fd[r]) / (2 * h);
            CHECK(std::abs(numeric - j(r, c)) / std::max(1.0, std::abs(j(r, c))) < 1e-8);
        }
    }
}

TEST_CASE("embedder descriptors rebuild the same function") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    const std::vector<EmbedderPtr> all{radius_embedder(3), frozen_mlp_embedder(3, 5, 7),
                                       linear_embedder(Matrix::from_rows({{1, 2, 3}, {0, -1, 0.5}}))};
    for (const auto& e : all) {
        const auto again = make_embedder(e->descriptor());
        const Vector x{n(rng), n(rng), n(rng)};
        CHECK(again->embed(x) == e->embed(x));
        CHECK(again->name() == e->name());
    }
    CHECK_THROWS_AS(make_embedder({{"kind", "facenet"}}), ConfigError);
    CHECK_THROWS_AS(make_embedder({{"kind", "radius"}}), ConfigError);
}

TEST_CASE("annulus dataset respects its radii and exports the angle") {
    DatasetSpec spec;
    spec.count = 1000;
    spec.seed = 5;
    spec.attribute = "angle";
    const auto data = generate_dataset(spec, *radius_embedder(2));
    REQUIRE(data.size() == 1000);
    for (const auto& s : data) {
        const double r = nn::norm(s.x);
        CHECK(r >= 0.5);
        CHECK(r <= 1.5);
        CHECK(s.y[0] == r);
        REQUIRE(s.a.has_value());
        CHECK((*s.a)[0] == std::atan2(s.x[1], s.x[0]));
        CHECK(s.metadata.at("upper_half") == (s.x[1] > 0.0 ? 1.0 : 0.0));
    }
    CHECK(generate_dataset(spec, *radius_embedder(2)) == data);
    spec.seed = 6;
    CHECK(generate_dataset(spec, *radius_embedder(2)) != data);
}

TEST_CASE("annulus radii are uniform on the interval") {
    DatasetSpec spec;
    spec.count = 20000;
    spec.seed = 9;
    const auto data = generate_dataset(spec, *radius_embedder(2));
    std::size_t below_one = 0;
    for (const auto& s : data) below_one += s.y[0] < 1.0;
    // Binomial(20000, 0.5): sd about 71.
    CHECK(std::abs(static_cast<double>(below_one) - 10000.0) < 300.0);
}

TEST_CASE("other distributions") {
    DatasetSpec mix;
    mix.kind = DistributionKind::gaussian_mixture;
    mix.dim = 3;
    mix.count = 200;
    mix.attribute = "offset";
    const auto a = generate_dataset(mix, *radius_embedder(3));
    for (const auto& s : a) {
        CHECK(s.x.size() == 3);
        CHECK(s.metadata.at("component") < 4.0);
        CHECK(s.a.has_value());
    }

    DatasetSpec ids;
    ids.kind = DistributionKind::clustered_identities;
    ids.dim = 4;
    ids.count = 300;
    ids.identities = 5;
    const auto b = generate_dataset(ids, *frozen_mlp_embedder(4, 8, 1));
    std::set<double> seen;
    for (const auto& s : b) {
        seen.insert(s.metadata.at("identity"));
        CHECK(s.y.size() == 8);
        CHECK_FALSE(s.a.has_value());
        CHECK(s.metadata.at("marked") == (s.metadata.at("trait") > 0.0 ? 1.0 : 0.0));
    }
    CHECK(seen.size() == 5);
}

TEST_CASE("dataset spec validation and json round trip") {
    DatasetSpec spec;
    spec.attribute = "offset";
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.attribute = "none";
    spec.dim = 1;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.dim = 2;
    spec.radius_min = 2.0;
    CHECK_THROWS_AS(spec.validate(), ConfigError);

    DatasetSpec custom;
    custom.kind = DistributionKind::clustered_identities;
    custom.dim = 5;
    custom.count = 77;
    custom.seed = 1234567890123ULL;
    custom.nuisance_std = 0.125;
    const DatasetSpec back = DatasetSpec::from_json(custom.to_json());
    CHECK(back.to_json() == custom.to_json());
    CHECK_THROWS_AS(DatasetSpec::from_json({{"kind", "spiral"}}), ConfigError);
    CHECK_THROWS_AS(generate_dataset(custom, *radius_embedder(2)), ShapeError);
}

TEST_CASE("angular distance") {
    const Vector y{0.3, -1.2, 2.0};
    const Vector neg{-0.3, 1.2, -2.0};
    CHECK(angular_distance(y, y) == 0.0);
    CHECK(angular_distance(y, neg) == 1.0);
    CHECK(angular_distance(Vector{1, 0}, Vector{0, 1}) == doctest::Approx(0.5).epsilon(1e-15));
    const Vector mean{1.0, 1.0};
    CHECK(angular_distance(Vector{2, 1}, Vector{1, 2}, std::span<const double>(mean)) == doctest::Approx(0.5));
    CHECK_THROWS_AS(angular_distance(Vector{0, 0}, Vector{1, 0}), DomainError);
}

TEST_CASE("mean embedding") {
    CHECK(mean_embedding(std::vector<Vector>{{1.5, -2.0}}) == Vector{1.5, -2.0});
    CHECK(mean_embedding(std::vector<Vector>{{1.5, -2.0}, {-1.5, 2.0}}) == Vector{0.0, 0.0});
    CHECK(mean_embedding(std::vector<Vector>{{1, 0}, {0, 1}}) == Vector{0.5, 0.5});
    CHECK(mean_embedding(Matrix::from_rows({{1, 0}, {0, 1}})) == Vector{0.5, 0.5});
    CHECK_THROWS_AS(mean_embedding(std::vector<Vector>{}), DomainError);
}
