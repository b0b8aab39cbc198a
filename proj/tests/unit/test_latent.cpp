#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "idpm/errors.hpp"
#include "idpm/latent/direction.hpp"
#include "idpm/latent/interpolate.hpp"
#include "idpm/latent/pca.hpp"

using namespace idpm;
using namespace idpm::latent;
using nn::Matrix;

namespace {

oracle::LabeledSample with_feature(Vector y, const std::string& name, double value) {
    oracle::LabeledSample s;
    s.x = y;
    s.y = std::move(y);
    s.metadata[name] = value;
    return s;
}

} // namespace

TEST_CASE("slerp endpoints and orthogonal midpoint") {
    const Vector y1{1.0, 0.0};
    const Vector y2{0.0, 1.0};
    CHECK(slerp(y1, y2, 0.0) == y1);
    CHECK(slerp(y1, y2, 1.0) == y2);
    const Vector mid = slerp(y1, y2, 0.5);
    const double h = std::sqrt(0.5);
    CHECK(std::abs(mid[0] - h) < 1e-12);
    CHECK(std::abs(mid[1] - h) < 1e-12);

    const Vector a{3.0, 1.0, -2.0};
    const Vector b{-1.0, 2.0, 0.5};
    CHECK(nn::distance(slerp(a, b, 0.0), a) < 1e-12);
    CHECK(nn::distance(slerp(a, b, 1.0), b) < 1e-12);
}

TEST_CASE("slerp has constant angular speed") {
    const Vector y1{1.0, 0.0};
    const Vector y2{std::cos(2.0), std::sin(2.0)};
    for (double tau : {0.1, 0.25, 0.6, 0.9}) {
        const Vector p = slerp(y1, y2, tau);
        CHECK(std::abs(std::atan2(p[1], p[0]) - 2.0 * tau) < 1e-12);
        CHECK(std::abs(nn::norm(p) - 1.0) < 1e-12);
    }
}

TEST_CASE("slerp degenerate inputs") {
    CHECK(slerp(Vector{1.0, 0.0}, Vector{2.0, 0.0}, 0.5) == lerp(Vector{1.0, 0.0}, Vector{2.0, 0.0}, 0.5));
    CHECK_THROWS_AS(slerp(Vector{1.0, 0.0}, Vector{-1.0, 0.0}, 0.5), DomainError);
    CHECK_THROWS_AS(slerp(Vector{0.0, 0.0}, Vector{1.0, 0.0}, 0.5), DomainError);
    CHECK_THROWS_AS(slerp(Vector{1.0}, Vector{1.0, 0.0}, 0.5), ShapeError);
}

TEST_CASE("lerp") {
    CHECK(lerp(Vector{0.0, 2.0}, Vector{4.0, -2.0}, 0.25) == Vector{1.0, 1.0});
    CHECK(lerp(Vector{0.5}, Vector{3.0}, 0.0) == Vector{0.5});
    CHECK(lerp(Vector{0.5}, Vector{3.0}, 1.0) == Vector{3.0});
}

TEST_CASE("pca recovers a rank one structure") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> n;
    const Vector axis{2.0 / 3.0, -1.0 / 3.0, 2.0 / 3.0};
    const Vector offset{1.0, 2.0, 3.0};
    std::vector<Vector> rows;
    for (int i = 0; i < 200; ++i) {
        const double c = 3.0 * n(rng);
        rows.push_back({offset[0] + c * axis[0], offset[1] + c * axis[1], offset[2] + c * axis[2]});
    }
    const PcaBasis basis = fit_pca(Matrix::from_rows(rows));
    REQUIRE(basis.axes.size() == 3);
    CHECK(std::abs(std::abs(nn::dot(basis.axes[0], axis)) - 1.0) < 1e-10);
    CHECK(basis.eigenvalues[1] < 1e-20);
    CHECK(basis.eigenvalues[2] < 1e-20);
    CHECK(basis.axes[0][0] > 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(std::abs(nn::dot(basis.axes[i], basis.axes[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
        }
    }
    for (const auto& r : rows) CHECK(nn::distance(project_first_k(r, basis, 1), r) < 1e-10);
}

TEST_CASE("pca eigenvalues match a direct covariance") {
    const Matrix ys = Matrix::from_rows({{2.0, 0.0}, {-2.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}});
    const PcaBasis basis = fit_pca(ys);
    CHECK(basis.mean == Vector{0.0, 0.0});
    CHECK(basis.eigenvalues[0] == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
    CHECK(basis.eigenvalues[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(std::abs(basis.axes[0][0] - 1.0) < 1e-14);
    CHECK(std::abs(basis.axes[1][1] - 1.0) < 1e-14);
    CHECK_THROWS_AS(fit_pca(Matrix::from_rows({{1.0, 2.0}})), DomainError);
}

TEST_CASE("pca reconstruction with every axis is the identity") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> n;
    std::vector<Vector> rows(50, Vector(4));
    for (auto& r : rows) for (double& v : r) v = n(rng);
    const PcaBasis basis = fit_pca(Matrix::from_rows(rows));
    for (const auto& r : rows) {
        CHECK(nn::distance(project_first_k(r, basis, 4), r) < 1e-12);
        CHECK(nn::distance(project_first_k(r, basis, 0), basis.mean) == 0.0);
    }
}

TEST_CASE("pca on isotropic data has a flat spectrum") {
    std::mt19937_64 rng(10);
    std::normal_distribution<double> n;
    Matrix ys(10000, 5);
    for (double& v : ys.values()) v = n(rng);
    const PcaBasis basis = fit_pca(ys);
    CHECK(basis.eigenvalues[0] / basis.eigenvalues[4] < 1.2);
    for (std::size_t i = 1; i < 5; ++i) CHECK(basis.eigenvalues[i] <= basis.eigenvalues[i - 1]);
}

TEST_CASE("custom direction") {
    const std::vector<Vector> a{{0.0, 0.0}, {2.0, 0.0}};
    const std::vector<Vector> b{{1.0, 3.0}, {1.0, 5.0}};
    const Direction d = custom_direction(a, b, "up");
    CHECK(d.vector == Vector{0.0, 1.0});
    CHECK(d.label == "up");
    const Direction r = custom_direction(b, a);
    CHECK(r.vector == Vector{-0.0, -1.0});

    const Direction diag = custom_direction({{0.0, 0.0}}, {{3.0, 4.0}});
    CHECK(diag.vector == Vector{0.6, 0.8});
    CHECK_THROWS_AS(custom_direction(a, a), DomainError);
    CHECK_THROWS_AS(custom_direction({}, b), DomainError);
}

TEST_CASE("percentile split on a continuous feature") {
    std::vector<oracle::LabeledSample> samples;
    for (int i = 0; i <= 100; ++i) samples.push_back(with_feature({static_cast<double>(i), 1.0}, "f", i));
    const GroupSplit split = percentile_split(samples, "f");
    CHECK(split.provenance == Provenance::percentile_split);
    CHECK(split.group_a.size() == 11);
    CHECK(split.group_b.size() == 11);
    for (auto i : split.group_a) CHECK(i <= 10);
    for (auto i : split.group_b) CHECK(i >= 90);
    const Direction d = metadata_direction(samples, "f");
    CHECK(d.vector == Vector{1.0, 0.0});
    CHECK(d.label == "f");
}

TEST_CASE("percentile split on an interpolated quantile") {
    std::vector<oracle::LabeledSample> samples;
    for (int i = 0; i < 10; ++i) samples.push_back(with_feature({1.0}, "f", i + 1));
    const GroupSplit split = percentile_split(samples, "f");
    // P10 = 1.9 and P90 = 9.1 under linear interpolation.
    CHECK(split.group_a == std::vector<std::size_t>{0});
    CHECK(split.group_b == std::vector<std::size_t>{9});
}

TEST_CASE("binary features split by value") {
    std::vector<oracle::LabeledSample> samples;
    for (int i = 0; i < 10; ++i) samples.push_back(with_feature({0.0, static_cast<double>(i)}, "b", i % 3 == 0));
    const GroupSplit split = percentile_split(samples, "b");
    CHECK(split.provenance == Provenance::binary_split);
    CHECK(split.group_a.size() == 6);
    CHECK(split.group_b == std::vector<std::size_t>{0, 3, 6, 9});
}

TEST_CASE("percentile split rejects missing and constant features") {
    std::vector<oracle::LabeledSample> samples;
    for (int i = 0; i < 5; ++i) samples.push_back(with_feature({1.0, 0.0}, "c", 2.0));
    CHECK_THROWS_AS(percentile_split(samples, "missing"), ConfigError);
    CHECK_THROWS_AS(metadata_direction(samples, "c"), DomainError);
}

TEST_CASE("pca direction and traversal") {
    const PcaBasis basis = fit_pca(Matrix::from_rows({{2.0, 0.0}, {-2.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}));
    const Direction d = pca_direction(basis, 1);
    CHECK(d.provenance == Provenance::pca_axis);
    CHECK_THROWS(pca_direction(basis, 2));

    const std::vector<Vector> ys{{3.0, 4.0}, {0.0, 1.0}};
    CHECK(corpus_mean_norm(ys) == 3.0);
    const Direction right{{1.0, 0.0}, "r", Provenance::binary_split};
    CHECK(traverse(Vector{1.0, 1.0}, right, 0.5, 3.0) == Vector{2.5, 1.0});
    CHECK(traverse(Vector{1.0, 1.0}, right, 0.0, 3.0) == Vector{1.0, 1.0});
    CHECK_THROWS_AS(traverse(Vector{1.0, 1.0}, right, 0.5, 0.0), ConfigError);
}

TEST_CASE("provenance names round trip") {
    for (auto p : {Provenance::binary_split, Provenance::percentile_split, Provenance::pca_axis}) {
        CHECK(parse_provenance(to_string(p)) == p);
    }
    CHECK_THROWS_AS(parse_provenance("vibes"), ConfigError);
}
