#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "idpm/diffusion/sampler.hpp"
#include "idpm/diffusion/trainer.hpp"
#include "idpm/eval/metrics.hpp"
#include "idpm/nn/denoiser.hpp"
#include "idpm/oracle/dataset.hpp"
#include "idpm/oracle/embedder.hpp"

namespace idpm::io {

struct ModelSection {
    std::size_t time_embed_dim = 64;
    std::vector<std::size_t> hidden_dims{128, 128, 128};
    // Condition on the dataset's exported attribute when it has one.
    bool use_attributes = false;
};

struct SweepSection {
    std::vector<double> scales{1.0, 1.5, 2.0, 2.5, 3.0};
    std::vector<Vector> targets;
    std::size_t per_target = 100;
    eval::Metric metric = eval::Metric::euclidean;
    std::optional<std::uint64_t> seed;
};

struct OutputSection {
    std::filesystem::path directory = ".";
    std::filesystem::path dataset = "dataset.json";
    std::filesystem::path checkpoint = "model.ckpt";
    std::filesystem::path samples = "samples.csv";
    std::filesystem::path sweep = "sweep.csv";
    std::filesystem::path verification = "verification.csv";

    // Relative paths are taken relative to `directory`.
    std::filesystem::path resolve(const std::filesystem::path& p) const;
};

inline constexpr const char* output_dir_env = "IDPM_OUTPUT_DIR";

// One document reproduces a run. Sections: dataset, embedder, model, train,
// sample, sweep, output. Seeds of train, sample and sweep have no default.
struct RunConfig {
    oracle::DatasetSpec dataset;
    // Empty means the radius embedder on the dataset dimension.
    nlohmann::json embedder = nlohmann::json::object();
    ModelSection model;
    diffusion::TrainConfig train;
    std::optional<std::uint64_t> train_seed;
    diffusion::SampleConfig sample;
    std::optional<std::uint64_t> sample_seed;
    SweepSection sweep;
    OutputSection output;

    RunConfig();

    oracle::EmbedderPtr make_embedder() const;
    nn::DenoiserTopology topology() const;

    // Checks every section and the dimensions shared between them.
    void validate() const;
    // validate() plus the seed required by `command` ("train", "sample", "sweep").
    void validate_for(const std::string& command) const;
};

RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& config);
RunConfig load_run_config(const std::filesystem::path& path);

// Applies IDPM_OUTPUT_DIR when set.
void apply_environment(RunConfig& config);

} // namespace idpm::io
