#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "idpm/diffusion/trainer.hpp"
#include "idpm/latent/direction.hpp"
#include "idpm/latent/pca.hpp"
#include "idpm/oracle/dataset.hpp"

namespace idpm::io {

// A generated corpus together with what produced it.
struct DatasetRecord {
    oracle::DatasetSpec spec;
    nlohmann::json embedder = nlohmann::json::object();
    std::vector<oracle::LabeledSample> samples;
};

nlohmann::json to_json(const DatasetRecord& record);
DatasetRecord dataset_from_json(const nlohmann::json& j);
void save_dataset(const DatasetRecord& record, const std::filesystem::path& path);
DatasetRecord load_dataset(const std::filesystem::path& path);

// Stacks x, y (and a when requested) into training matrices. Throws ShapeError
// if rows disagree in width or attributes are requested but missing.
diffusion::TrainingSet to_training_set(const std::vector<oracle::LabeledSample>& samples, bool with_attributes);
nn::Matrix embeddings_matrix(const std::vector<oracle::LabeledSample>& samples);

nlohmann::json to_json(const latent::Direction& dir);
latent::Direction direction_from_json(const nlohmann::json& j);

nlohmann::json to_json(const latent::PcaBasis& basis);
latent::PcaBasis pca_from_json(const nlohmann::json& j);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const nlohmann::json& j, const std::filesystem::path& path);

} // namespace idpm::io
