#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "gradcheck.hpp"
#include "idpm/diffusion/ops.hpp"
#include "idpm/diffusion/sampler.hpp"
#include "idpm/diffusion/schedule.hpp"
#include "idpm/eval/baselines.hpp"
#include "idpm/eval/metrics.hpp"
#include "idpm/eval/sweep.hpp"
#include "idpm/eval/verification.hpp"
#include "idpm/io/binary.hpp"
#include "idpm/io/checkpoint.hpp"
#include "idpm/latent/direction.hpp"
#include "idpm/latent/interpolate.hpp"
#include "idpm/latent/pca.hpp"
#include "ring.hpp"

using namespace idpm;
using nn::Matrix;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Shared by the ring criteria; trained once.
struct RingFixture {
    oracle::DatasetSpec data = testing::ring_dataset_spec(1);
    testing::RingRun run = testing::train_ring(data, testing::ring_train_config(1));
    Vector target{1.0};
    Matrix guided; // s = 2, 500 samples

    RingFixture() {
        diffusion::SampleConfig cfg;
        cfg.guidance = 2.0;
        cfg.seed = 7;
        guided = diffusion::sample(run.model, target, std::nullopt, run.schedule, cfg, 500);
    }
};

RingFixture& ring() {
    static RingFixture f;
    return f;
}

Outcome gradient_correctness() {
    const auto start = Clock::now();
    double worst = 0.0;
    std::string where;
    std::size_t checked = 0;
    for (std::uint64_t seed : {1, 2, 3}) {
        std::mt19937_64 rng(seed);

        nn::DenoiserTopology small;
        small.attr_dim = 2;
        small.id_dim = 3;
        small.time_embed_dim = 8;
        small.hidden_dims = {5, 4};
        nn::ConditionalDenoiser m(small, seed);
        testing::randomize_parameters(m, 0.6, rng);
        auto batch = testing::random_batch(small, 3, 100, true, rng);
        auto up = testing::random_matrix(3, 2, rng);
        auto r = testing::gradient_check(m, batch, up, 1e-6, 1000000, rng);
        checked += r.checked;
        if (r.max_relative_error > worst) {
            worst = r.max_relative_error;
            where = r.worst_parameter;
        }

        const auto full = testing::ring_topology();
        nn::ConditionalDenoiser big(full, seed);
        testing::randomize_parameters(big, 0.1, rng);
        batch = testing::random_batch(full, 4, 100, false, rng);
        up = testing::random_matrix(4, 2, rng);
        r = testing::gradient_check(big, batch, up, 1e-6, 40, rng);
        checked += r.checked;
        if (r.max_relative_error > worst) {
            worst = r.max_relative_error;
            where = r.worst_parameter;
        }
    }
    const double secs = seconds_since(start);
    return {worst < 1e-5 && secs < 10.0,
            fmt::format("max relative error {:.3g} at {} over {} entries, 3 seeds, {:.2f} s", worst, where, checked, secs)};
}

Outcome schedule_invariants() {
    std::vector<std::string> failures;
    const auto base_ok = [&failures](const diffusion::NoiseSchedule& s, const std::string& name) {
        double prev = 1.0;
        for (std::size_t t = 1; t <= s.steps(); ++t) {
            if (!(s.beta(t) > 0.0 && s.beta(t) <= 0.999)) failures.push_back(name + " beta range");
            if (!(s.alpha_bar(t) < prev)) failures.push_back(name + " alpha_bar order");
            prev = s.alpha_bar(t);
        }
    };
    for (std::size_t T : {100, 1000}) {
        base_ok(diffusion::make_cosine_schedule(T), fmt::format("cosine T={}", T));
        base_ok(diffusion::make_linear_schedule(T), fmt::format("linear T={}", T));
    }

    double worst = 0.0;
    std::size_t kept = 0;
    for (auto kind : {diffusion::ScheduleKind::cosine, diffusion::ScheduleKind::linear}) {
        const auto base = diffusion::make_schedule(kind, 1000);
        const auto r = diffusion::respace(base, 250);
        kept = r.schedule.steps();
        double prev = 1.0;
        for (std::size_t j = 1; j <= r.schedule.steps(); ++j) {
            worst = std::max(worst, std::abs(r.schedule.alpha_bar(j) - base.alpha_bar(r.original_steps[j - 1])));
            if (!(r.schedule.alpha_bar(j) < prev)) failures.push_back("respaced alpha_bar order");
            prev = r.schedule.alpha_bar(j);
        }
    }
    std::string detail = fmt::format("cosine/linear at T=100,1000; respaced 1000->{} max alpha_bar deviation {:.3g}", kept,
                                     worst);
    if (!failures.empty()) detail += "; first failure: " + failures.front();
    return {failures.empty() && kept == 250 && worst <= 1e-12, detail};
}

Outcome guidance_identity() {
    bool ok = true;
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n;
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        Vector u(8), c(8);
        for (auto& v : u) v = n(rng);
        for (auto& v : c) v = n(rng);
        ok = ok && diffusion::cfg_combine(u, c, 1.0) == c;
        ok = ok && diffusion::cfg_combine(u, c, 0.0) == u;
        const double s1 = 1.0 + 3.0 * std::abs(n(rng));
        const double s2 = 1.0 + 3.0 * std::abs(n(rng));
        const double lam = std::abs(n(rng));
        const Vector a = diffusion::cfg_combine(u, c, s1);
        const Vector b = diffusion::cfg_combine(u, c, s2);
        const Vector m = diffusion::cfg_combine(u, c, (1.0 - lam) * s1 + lam * s2);
        for (std::size_t i = 0; i < 8; ++i) {
            worst = std::max(worst, std::abs(m[i] - ((1.0 - lam) * a[i] + lam * b[i])));
        }
    }
    // Dyadic inputs make every operation exact.
    const Vector u{0.5, -1.25, 3.0};
    const Vector c{0.75, 2.5, -1.0};
    for (double s : {1.5, 2.0, 2.5, 3.0}) {
        const Vector g = diffusion::cfg_combine(u, c, s);
        for (std::size_t i = 0; i < 3; ++i) ok = ok && g[i] - u[i] == s * (c[i] - u[i]);
    }
    return {ok && worst < 1e-12,
            fmt::format("s=1 bitwise conditional, exact on dyadic inputs, affine combination error {:.3g}", worst)};
}

Outcome ring_inversion() {
    auto& f = ring();
    const double err = testing::mean_radius_error(f.guided, 1.0);
    const std::size_t bins = testing::occupied_angle_bins(f.guided, 36);
    return {f.run.seconds <= 300.0 && err < 0.1 && bins >= 33,
            fmt::format("trained {} batches in {:.1f} s (loss {:.3f}); s=2, 500 samples: mean |r-1| {:.4f}, {} of 36 bins",
                        50000, f.run.seconds, f.run.final_loss, err, bins)};
}

Outcome oracle_equivalence() {
    auto& f = ring();
    const auto data = testing::ring_sampler(f.data);
    std::mt19937_64 r1(11), r2(12);
    const auto o1 = eval::rejection_oracle(*f.run.embedder, f.target, 0.05, data, 500, r1, 10000000);
    const auto o2 = eval::rejection_oracle(*f.run.embedder, f.target, 0.05, data, 500, r2, 10000000);
    const double diff = eval::energy_distance(f.guided, o1.samples);
    const double base = eval::energy_distance(o2.samples, o1.samples);
    return {diff <= 3.0 * base,
            fmt::format("energy distance diffusion-oracle {:.5f}, oracle-oracle {:.5f} (ratio {:.2f}, acceptance {:.3f})",
                        diff, base, diff / base, o1.acceptance_rate)};
}

Outcome guidance_trend() {
    auto& f = ring();
    double err1 = 0.0, err3 = 0.0, div1 = 0.0, div3 = 0.0;
    std::string per_seed;
    for (std::uint64_t seed : {101, 202, 303}) {
        eval::SweepSpec spec;
        spec.targets = {f.target};
        spec.scales = {1.0, 3.0};
        spec.per_target = 500;
        spec.seed = seed;
        spec.metric = eval::Metric::euclidean;
        const auto rows = eval::guidance_sweep(f.run.model, f.run.schedule, *f.run.embedder, spec);
        err1 += rows[0].identity_error / 3.0;
        err3 += rows[1].identity_error / 3.0;
        div1 += rows[0].diversity / 3.0;
        div3 += rows[1].diversity / 3.0;
        per_seed += fmt::format(" [{}: err {:.4f}->{:.4f}, div {:.4f}->{:.4f}]", seed, rows[0].identity_error,
                                rows[1].identity_error, rows[0].diversity, rows[1].diversity);
    }
    return {err3 < err1 && div3 < div1,
            fmt::format("mean identity error s=1 {:.4f}, s=3 {:.4f}; diversity s=1 {:.4f}, s=3 {:.4f};{}", err1, err3,
                        div1, div3, per_seed)};
}

Outcome whitebox_contrast() {
    auto& f = ring();
    std::mt19937_64 rng(21);
    std::normal_distribution<double> n;
    std::uniform_real_distribution<double> scale(0.2, 2.5);
    double worst_residual = 0.0, worst_ray = 0.0;
    bool converged = true;
    Matrix ends(20, 2);
    for (std::size_t i = 0; i < 20; ++i) {
        Vector x0{n(rng), n(rng)};
        const double s = scale(rng) / nn::norm(x0);
        for (double& v : x0) v *= s;
        const auto r = eval::whitebox_gd_invert(*f.run.embedder, f.target, x0);
        converged = converged && r.converged;
        worst_residual = std::max(worst_residual, std::abs(f.run.embedder->embed(r.x)[0] - f.target[0]));
        const double norm0 = nn::norm(x0);
        const Vector on_ray{f.target[0] * x0[0] / norm0, f.target[0] * x0[1] / norm0};
        worst_ray = std::max(worst_ray, nn::distance(r.x, on_ray));
        ends.set_row(i, r.x);
    }
    const double gd_spread = eval::diversity(ends);
    return {converged && worst_residual < 1e-6 && worst_ray < 1e-3,
            fmt::format("20 restarts: max |f(x)-y| {:.3g}, max distance to initial ray {:.3g}; endpoints copy the "
                        "initial angles (diversity {:.3f}) while the sampler covers the ring itself",
                        worst_residual, worst_ray, gd_spread)};
}

Outcome latent_exactness() {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> n;
    double slerp_err = 0.0, ortho_err = 0.0, recon_err = 0.0;
    bool antisym = true;
    for (int trial = 0; trial < 50; ++trial) {
        Vector a(6), b(6);
        for (auto& v : a) v = n(rng);
        for (auto& v : b) v = n(rng);
        slerp_err = std::max(slerp_err, nn::distance(latent::slerp(a, b, 0.0), a));
        slerp_err = std::max(slerp_err, nn::distance(latent::slerp(a, b, 1.0), b));

        const std::vector<Vector> ga{a, Vector(6, 0.5)};
        const std::vector<Vector> gb{b, Vector(6, -0.25)};
        const auto d1 = latent::custom_direction(ga, gb);
        const auto d2 = latent::custom_direction(gb, ga);
        for (std::size_t i = 0; i < 6; ++i) antisym = antisym && d1.vector[i] == -d2.vector[i];
    }
    const double h = std::sqrt(0.5);
    const Vector mid = latent::slerp(Vector{1.0, 0.0}, Vector{0.0, 1.0}, 0.5);
    slerp_err = std::max({slerp_err, std::abs(mid[0] - h), std::abs(mid[1] - h)});

    Matrix ys(300, 6);
    for (std::size_t r = 0; r < ys.rows(); ++r)
        for (std::size_t c = 0; c < 6; ++c) ys(r, c) = n(rng) * static_cast<double>(c + 1);
    const auto basis = latent::fit_pca(ys);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            ortho_err = std::max(ortho_err, std::abs(nn::dot(basis.axes[i], basis.axes[j]) - (i == j ? 1.0 : 0.0)));
    for (std::size_t r = 0; r < ys.rows(); ++r)
        recon_err = std::max(recon_err, nn::distance(latent::project_first_k(ys.row(r), basis, 6), ys.row(r)));

    return {slerp_err <= 1e-12 && ortho_err <= 1e-10 && recon_err <= 1e-8 && antisym,
            fmt::format("slerp {:.3g}, PCA orthonormality {:.3g}, full-rank reconstruction {:.3g}, antisymmetry {}",
                        slerp_err, ortho_err, recon_err, antisym ? "exact" : "broken")};
}

double exhaustive_accuracy(const std::vector<eval::VerificationPair>& pairs) {
    double best = 0.0;
    for (const auto& p : pairs) {
        for (double th : {p.distance - 1e-9, p.distance, p.distance + 1e-9}) {
            std::size_t correct = 0;
            for (const auto& q : pairs) correct += (q.distance < th) == q.same_identity;
            best = std::max(best, static_cast<double>(correct) / static_cast<double>(pairs.size()));
        }
    }
    return best;
}

Outcome verification_protocol() {
    const std::vector<eval::VerificationPair> separable{{0.1, true}, {0.2, true}, {0.8, false}, {0.9, false}};
    const std::vector<eval::VerificationPair> interleaved{{0.3, true}, {0.7, true}, {0.5, false}, {0.9, false}};
    const double sep = eval::verification_accuracy(separable).accuracy;
    const double inter = eval::verification_accuracy(interleaved).accuracy;
    const double oracle = exhaustive_accuracy(interleaved);

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u;
    std::bernoulli_distribution coin(0.5);
    std::vector<eval::VerificationPair> random(1000);
    for (auto& p : random) p = {u(rng), coin(rng)};
    const double chance = eval::verification_accuracy(random).accuracy;

    return {sep == 1.0 && inter == 0.75 && oracle == 0.75 && std::abs(chance - 0.5) <= 0.05,
            fmt::format("separable {}, interleaved {} (exhaustive {}), random labels over 1000 pairs {:.3f}", sep, inter,
                        oracle, chance)};
}

Outcome persistence() {
    auto& f = ring();
    const auto ckpt = io::make_checkpoint(f.run.live, f.run.ema, diffusion::ScheduleKind::cosine, f.run.schedule,
                                          f.run.embedder->descriptor());
    const auto dir = std::filesystem::temp_directory_path() / fmt::format("idpm-acceptance-{}", std::random_device{}());
    std::filesystem::create_directories(dir);
    io::save_checkpoint(ckpt, dir / "a.ckpt");
    const auto loaded = io::load_checkpoint(dir / "a.ckpt");
    io::save_checkpoint(loaded, dir / "b.ckpt");
    const auto bytes = io::read_file(dir / "a.ckpt");
    const bool identical = bytes == io::read_file(dir / "b.ckpt");
    std::filesystem::remove_all(dir);

    diffusion::SampleConfig cfg;
    cfg.guidance = 2.0;
    cfg.seed = 99;
    const Matrix before = diffusion::sample(f.run.model, f.target, std::nullopt, f.run.schedule, cfg, 200);
    const Matrix again = diffusion::sample(f.run.model, f.target, std::nullopt, f.run.schedule, cfg, 200);
    const Matrix after = diffusion::sample(loaded.model(), f.target, std::nullopt, loaded.schedule, cfg, 200);
    return {identical && before == again && before == after,
            fmt::format("{} byte checkpoint {}; fixed-seed samples {} on rerun and {} after reload", bytes.size(),
                        identical ? "re-saved identically" : "changed on re-save",
                        before == again ? "identical" : "differ", before == after ? "identical" : "differ")};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"gradient correctness", gradient_correctness},
        {"schedule invariants", schedule_invariants},
        {"guidance identity", guidance_identity},
        {"ring inversion", ring_inversion},
        {"oracle equivalence", oracle_equivalence},
        {"guidance tradeoff trend", guidance_trend},
        {"white-box baseline contrast", whitebox_contrast},
        {"latent toolkit exactness", latent_exactness},
        {"verification protocol", verification_protocol},
        {"persistence and determinism", persistence},
    };
    const auto start = Clock::now();
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    std::cout << fmt::format("{} of {} criteria passed in {:.1f} s", criteria.size() - failed, criteria.size(),
                             seconds_since(start))
              << std::endl;
    return failed == 0 ? 0 : 1;
}
