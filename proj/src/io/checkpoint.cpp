#include "idpm/io/checkpoint.hpp"

#include <string>

#include "idpm/errors.hpp"
#include "idpm/io/binary.hpp"

namespace idpm::io {

namespace {

constexpr std::string_view magic = "IDPM";
// Guards allocation on corrupt headers.
constexpr std::uint64_t max_count = std::uint64_t{1} << 32;

std::uint64_t bounded(ByteReader& r, const std::string& field) {
    const std::uint64_t v = r.u64(field);
    if (v > max_count) throw FormatError(field, "implausible value " + std::to_string(v));
    return v;
}

} // namespace

nn::ConditionalDenoiser Checkpoint::model(bool use_ema) const {
    nn::ConditionalDenoiser m(topology, 0);
    m.set_flat_parameters(use_ema ? ema_parameters : parameters);
    m.mark_fitted();
    return m;
}

Checkpoint make_checkpoint(const nn::ConditionalDenoiser& model, const nn::EmaParams& ema,
                           diffusion::ScheduleKind kind, const diffusion::NoiseSchedule& schedule,
                           nlohmann::json embedder, nlohmann::json train) {
    Checkpoint c;
    c.topology = model.topology();
    c.schedule_kind = kind;
    c.schedule = schedule;
    c.parameters = model.flat_parameters();
    c.ema_parameters = ema.shadow;
    if (c.ema_parameters.size() != c.parameters.size()) throw ShapeError("checkpoint: EMA shape does not mirror the model");
    c.embedder = std::move(embedder);
    c.train = std::move(train);
    return c;
}

std::vector<std::uint8_t> encode_checkpoint(const Checkpoint& c) {
    const std::size_t count = c.topology.param_count();
    if (c.parameters.size() != count || c.ema_parameters.size() != count) {
        throw ShapeError("checkpoint: payload length differs from the topology's parameter count");
    }
    ByteWriter w;
    w.bytes(magic);
    w.u32(Checkpoint::format_version);
    w.u64(c.topology.data_dim);
    w.u64(c.topology.id_dim);
    w.u64(c.topology.attr_dim);
    w.u64(c.topology.time_embed_dim);
    w.u64(c.topology.hidden_dims.size());
    for (std::size_t h : c.topology.hidden_dims) w.u64(h);
    w.u64(c.schedule_kind == diffusion::ScheduleKind::cosine ? 0 : 1);
    w.u64(c.schedule.steps());
    w.u64(count);
    const std::string meta = nlohmann::json{{"embedder", c.embedder}, {"train", c.train}}.dump();
    w.u64(meta.size());
    w.bytes(meta);
    w.f64s(c.schedule.betas());
    w.f64s(c.parameters);
    w.f64s(c.ema_parameters);
    return w.buffer();
}

Checkpoint decode_checkpoint(std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    if (r.bytes(magic.size(), "magic") != magic) throw FormatError("magic", "not an IDPM checkpoint");
    const std::uint32_t version = r.u32("version");
    if (version != Checkpoint::format_version) {
        throw FormatError("version", "unsupported version " + std::to_string(version) + " (expected " +
                                         std::to_string(Checkpoint::format_version) + ")");
    }

    Checkpoint c;
    c.topology.data_dim = bounded(r, "topology.data_dim");
    c.topology.id_dim = bounded(r, "topology.id_dim");
    c.topology.attr_dim = bounded(r, "topology.attr_dim");
    c.topology.time_embed_dim = bounded(r, "topology.time_embed_dim");
    const std::uint64_t layers = bounded(r, "topology.layer_count");
    c.topology.hidden_dims.clear();
    for (std::uint64_t i = 0; i < layers; ++i) c.topology.hidden_dims.push_back(bounded(r, "topology.hidden_dims"));
    try {
        c.topology.validate();
    } catch (const ConfigError& e) {
        throw FormatError("topology", e.what());
    }

    const std::uint64_t kind = r.u64("schedule.kind");
    if (kind > 1) throw FormatError("schedule.kind", "unknown schedule kind " + std::to_string(kind));
    c.schedule_kind = kind == 0 ? diffusion::ScheduleKind::cosine : diffusion::ScheduleKind::linear;
    const std::uint64_t T = bounded(r, "schedule.steps");
    const std::uint64_t count = bounded(r, "parameter_count");
    if (count != c.topology.param_count()) {
        throw FormatError("parameter_count", std::to_string(count) + " does not match the topology's " +
                                                 std::to_string(c.topology.param_count()));
    }

    const std::uint64_t meta_len = bounded(r, "metadata.length");
    const std::string meta = r.bytes(meta_len, "metadata");
    try {
        const auto j = nlohmann::json::parse(meta);
        c.embedder = j.at("embedder");
        c.train = j.at("train");
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("metadata", e.what());
    }

    try {
        c.schedule = diffusion::NoiseSchedule::from_betas(r.f64s(T, "schedule.betas"));
    } catch (const ConfigError& e) {
        throw FormatError("schedule.betas", e.what());
    }
    c.parameters = r.f64s(count, "parameters");
    c.ema_parameters = r.f64s(count, "ema_parameters");
    if (r.remaining() != 0) throw FormatError("length", std::to_string(r.remaining()) + " unexpected trailing bytes");
    return c;
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
    write_file_atomic(path, encode_checkpoint(ckpt));
}

void save_checkpoint(const nn::ConditionalDenoiser& model, const nn::EmaParams& ema, diffusion::ScheduleKind kind,
                     const diffusion::NoiseSchedule& schedule, const std::filesystem::path& path) {
    save_checkpoint(make_checkpoint(model, ema, kind, schedule), path);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    return decode_checkpoint(read_file(path));
}

} // namespace idpm::io
