#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <json.hpp>

#include "idpm/diffusion/schedule.hpp"
#include "idpm/nn/denoiser.hpp"
#include "idpm/nn/optim.hpp"

namespace idpm::io {

// Binary checkpoint, all integers and floats little-endian:
//
//   "IDPM"                       4 bytes
//   version                      u32 (currently 1)
//   data_dim, id_dim, attr_dim,
//   time_embed_dim, layer count  u64 each
//   hidden widths                u64 x layer count
//   schedule kind (0 cosine,
//   1 linear), T, param count    u64 each
//   metadata length              u64
//   metadata                     UTF-8 JSON {"embedder": ..., "train": ...}
//   betas                        f64 x T
//   parameters                   f64 x param count
//   EMA parameters               f64 x param count
//
// The parameter count must equal the count implied by the topology, and the
// file must end right after the EMA block.
struct Checkpoint {
    static constexpr std::uint32_t format_version = 1;

    nn::DenoiserTopology topology;
    diffusion::ScheduleKind schedule_kind = diffusion::ScheduleKind::cosine;
    diffusion::NoiseSchedule schedule;
    Vector parameters;
    Vector ema_parameters;
    nlohmann::json embedder = nlohmann::json::object();
    nlohmann::json train = nlohmann::json::object();

    // Model carrying either the EMA or the live parameters, marked fitted.
    nn::ConditionalDenoiser model(bool use_ema = true) const;
};

Checkpoint make_checkpoint(const nn::ConditionalDenoiser& model, const nn::EmaParams& ema,
                           diffusion::ScheduleKind kind, const diffusion::NoiseSchedule& schedule,
                           nlohmann::json embedder = nlohmann::json::object(),
                           nlohmann::json train = nlohmann::json::object());

std::vector<std::uint8_t> encode_checkpoint(const Checkpoint& ckpt);
Checkpoint decode_checkpoint(std::span<const std::uint8_t> bytes);

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
void save_checkpoint(const nn::ConditionalDenoiser& model, const nn::EmaParams& ema, diffusion::ScheduleKind kind,
                     const diffusion::NoiseSchedule& schedule, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

} // namespace idpm::io
