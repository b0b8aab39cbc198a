#include "idpm/eval/sweep.hpp"

#include <random>

#include "idpm/errors.hpp"

namespace idpm::eval {

std::uint64_t cell_seed(std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

std::vector<SweepRow> guidance_sweep(const nn::ConditionalDenoiser& model, const diffusion::NoiseSchedule& schedule,
                                     const oracle::Embedder& embedder, const SweepSpec& spec) {
    if (spec.targets.empty()) throw ConfigError("guidance_sweep: no targets");
    if (spec.scales.empty()) throw ConfigError("guidance_sweep: no guidance scales");
    if (spec.per_target < 2) throw ConfigError("guidance_sweep: diversity needs at least two samples per target");

    std::vector<SweepRow> rows;
    for (double s : spec.scales) {
        diffusion::SampleConfig cfg = spec.base;
        cfg.guidance = s;
        SweepRow row{s, 0.0, 0.0, 0};
        for (std::size_t t = 0; t < spec.targets.size(); ++t) {
            std::mt19937_64 rng(cell_seed(spec.seed, t));
            const nn::Matrix xs = diffusion::sample(model, spec.targets[t], std::nullopt, schedule, cfg, spec.per_target, rng);
            row.identity_error += identity_error(xs, spec.targets[t], embedder, spec.metric);
            row.diversity += diversity(xs);
            row.samples += xs.rows();
        }
        row.identity_error /= static_cast<double>(spec.targets.size());
        row.diversity /= static_cast<double>(spec.targets.size());
        rows.push_back(row);
    }
    return rows;
}

} // namespace idpm::eval
