#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "idpm/diffusion/sampler.hpp"
#include "idpm/diffusion/schedule.hpp"
#include "idpm/eval/metrics.hpp"
#include "idpm/nn/denoiser.hpp"
#include "idpm/oracle/embedder.hpp"

namespace idpm::eval {

struct SweepRow {
    double guidance = 0.0;
    double identity_error = 0.0;
    double diversity = 0.0;
    std::size_t samples = 0;
};

struct SweepSpec {
    std::vector<Vector> targets;
    std::vector<double> scales;
    std::size_t per_target = 100;
    diffusion::SampleConfig base;
    std::uint64_t seed = 0;
    Metric metric = Metric::euclidean;
};

// Seed of the sampling stream for target `index`. Every guidance scale reuses
// the same stream per target so rows differ only in s.
std::uint64_t cell_seed(std::uint64_t seed, std::size_t index);

// One row per scale: identity error and within-target diversity, each averaged
// over targets.
std::vector<SweepRow> guidance_sweep(const nn::ConditionalDenoiser& model, const diffusion::NoiseSchedule& schedule,
                                     const oracle::Embedder& embedder, const SweepSpec& spec);

} // namespace idpm::eval
