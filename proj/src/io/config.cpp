#include "idpm/io/config.hpp"

#include <algorithm>
#include <cstdlib>

#include "idpm/errors.hpp"
#include "idpm/io/records.hpp"

namespace idpm::io {

std::filesystem::path OutputSection::resolve(const std::filesystem::path& p) const {
    return p.is_absolute() ? p : directory / p;
}

RunConfig::RunConfig() {
    train.diffusion_steps = 100;
    train.batch_size = 64;
    train.learning_rate = 1e-4;
    train.ema_rate = 0.9999;
    train.cond_dropout = 0.1;
    sample.guidance = 2.0;
}

oracle::EmbedderPtr RunConfig::make_embedder() const {
    if (embedder.empty()) return oracle::radius_embedder(dataset.dim);
    return oracle::make_embedder(embedder);
}

nn::DenoiserTopology RunConfig::topology() const {
    nn::DenoiserTopology t;
    t.data_dim = dataset.dim;
    t.id_dim = make_embedder()->output_dim();
    t.attr_dim = model.use_attributes ? dataset.attribute_dim() : 0;
    t.time_embed_dim = model.time_embed_dim;
    t.hidden_dims = model.hidden_dims;
    return t;
}

void RunConfig::validate() const {
    dataset.validate();
    const auto emb = make_embedder();
    if (emb->input_dim() != dataset.dim) {
        throw ConfigError("embedder expects inputs of dimension " + std::to_string(emb->input_dim()) +
                          " but dataset.dim is " + std::to_string(dataset.dim));
    }
    if (model.use_attributes && dataset.attribute_dim() == 0) {
        throw ConfigError("model.use_attributes is set but dataset.attribute is none");
    }
    topology().validate();
    train.validate();
    sample.validated(train.diffusion_steps);
    for (const auto& t : sweep.targets) {
        if (t.size() != emb->output_dim()) {
            throw ConfigError("sweep target has dimension " + std::to_string(t.size()) + ", embedder outputs " +
                              std::to_string(emb->output_dim()));
        }
    }
    if (sweep.scales.empty()) throw ConfigError("sweep.scales is empty");
    if (sweep.per_target < 2) throw ConfigError("sweep.per_target must be at least 2");
    if (!output.directory.empty() && !std::filesystem::is_directory(output.directory)) {
        throw ConfigError("output.directory '" + output.directory.string() + "' does not exist");
    }
}

void RunConfig::validate_for(const std::string& command) const {
    validate();
    if (command == "train" && !train_seed) throw ConfigError("train.seed is required");
    if (command == "sample" && !sample_seed) throw ConfigError("sample.seed is required");
    if (command == "sweep" && !sweep.seed) throw ConfigError("sweep.seed is required");
}

namespace {

template <class T>
void read_opt(const nlohmann::json& section, const char* key, std::optional<T>& out) {
    if (section.contains(key)) out = section.at(key).get<T>();
}

} // namespace

RunConfig run_config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        static const std::vector<std::string> known{"dataset", "embedder", "model", "train",
                                                    "sample", "sweep", "output"};
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("unknown config section '" + key + "'");
        }
        if (!value.is_object()) throw ConfigError("config section '" + key + "' must be an object");
    }
    RunConfig c;
    try {
        if (j.contains("dataset")) c.dataset = oracle::DatasetSpec::from_json(j.at("dataset"));
        if (j.contains("embedder")) c.embedder = j.at("embedder");
        if (j.contains("model")) {
            const auto& m = j.at("model");
            c.model.time_embed_dim = m.value("time_embed_dim", c.model.time_embed_dim);
            c.model.hidden_dims = m.value("hidden_dims", c.model.hidden_dims);
            c.model.use_attributes = m.value("use_attributes", c.model.use_attributes);
        }
        if (j.contains("train")) {
            const auto& t = j.at("train");
            if (t.contains("schedule")) c.train.schedule = diffusion::parse_schedule_kind(t.at("schedule").get<std::string>());
            c.train.diffusion_steps = t.value("diffusion_steps", c.train.diffusion_steps);
            c.train.cond_dropout = t.value("cond_dropout", c.train.cond_dropout);
            c.train.batch_size = t.value("batch_size", c.train.batch_size);
            c.train.learning_rate = t.value("learning_rate", c.train.learning_rate);
            c.train.total_batches = t.value("total_batches", c.train.total_batches);
            c.train.ema_rate = t.value("ema_rate", c.train.ema_rate);
            read_opt(t, "seed", c.train_seed);
        }
        if (j.contains("sample")) {
            const auto& s = j.at("sample");
            c.sample.guidance = s.value("guidance", c.sample.guidance);
            if (s.contains("respaced_steps")) c.sample.respaced_steps = s.at("respaced_steps").get<std::size_t>();
            c.sample.threshold_percentile = s.value("threshold_percentile", c.sample.threshold_percentile);
            if (s.contains("threshold")) c.sample.threshold = diffusion::parse_threshold_mode(s.at("threshold").get<std::string>());
            if (s.contains("variance")) c.sample.variance = diffusion::parse_variance_mode(s.at("variance").get<std::string>());
            read_opt(s, "seed", c.sample_seed);
        }
        if (j.contains("sweep")) {
            const auto& s = j.at("sweep");
            c.sweep.scales = s.value("scales", c.sweep.scales);
            c.sweep.targets = s.value("targets", c.sweep.targets);
            c.sweep.per_target = s.value("per_target", c.sweep.per_target);
            if (s.contains("metric")) c.sweep.metric = eval::parse_metric(s.at("metric").get<std::string>());
            read_opt(s, "seed", c.sweep.seed);
        }
        if (j.contains("output")) {
            const auto& o = j.at("output");
            const auto path = [&o](const char* key, std::filesystem::path& out) {
                if (o.contains(key)) out = o.at(key).get<std::string>();
            };
            path("directory", c.output.directory);
            path("dataset", c.output.dataset);
            path("checkpoint", c.output.checkpoint);
            path("samples", c.output.samples);
            path("sweep", c.output.sweep);
            path("verification", c.output.verification);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    if (c.sample_seed) c.sample.seed = *c.sample_seed;
    if (c.train_seed) c.train.seed = *c.train_seed;
    return c;
}

nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j;
    j["dataset"] = c.dataset.to_json();
    j["embedder"] = c.embedder.empty() ? c.make_embedder()->descriptor() : c.embedder;
    j["model"] = {{"time_embed_dim", c.model.time_embed_dim},
                  {"hidden_dims", c.model.hidden_dims},
                  {"use_attributes", c.model.use_attributes}};
    j["train"] = {{"schedule", diffusion::to_string(c.train.schedule)},
                  {"diffusion_steps", c.train.diffusion_steps},
                  {"cond_dropout", c.train.cond_dropout},
                  {"batch_size", c.train.batch_size},
                  {"learning_rate", c.train.learning_rate},
                  {"total_batches", c.train.total_batches},
                  {"ema_rate", c.train.ema_rate}};
    if (c.train_seed) j["train"]["seed"] = *c.train_seed;
    j["sample"] = {{"guidance", c.sample.guidance},
                   {"threshold_percentile", c.sample.threshold_percentile},
                   {"threshold", diffusion::to_string(c.sample.threshold)},
                   {"variance", diffusion::to_string(c.sample.variance)}};
    if (c.sample.respaced_steps) j["sample"]["respaced_steps"] = *c.sample.respaced_steps;
    if (c.sample_seed) j["sample"]["seed"] = *c.sample_seed;
    j["sweep"] = {{"scales", c.sweep.scales},
                  {"targets", c.sweep.targets},
                  {"per_target", c.sweep.per_target},
                  {"metric", eval::to_string(c.sweep.metric)}};
    if (c.sweep.seed) j["sweep"]["seed"] = *c.sweep.seed;
    j["output"] = {{"directory", c.output.directory.string()},
                   {"dataset", c.output.dataset.string()},
                   {"checkpoint", c.output.checkpoint.string()},
                   {"samples", c.output.samples.string()},
                   {"sweep", c.output.sweep.string()},
                   {"verification", c.output.verification.string()}};
    return j;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    nlohmann::json j;
    try {
        j = read_json(path);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("cannot read config: ") + e.what());
    }
    return run_config_from_json(j);
}

void apply_environment(RunConfig& config) {
    if (const char* dir = std::getenv(output_dir_env); dir != nullptr && *dir != '\0') {
        config.output.directory = dir;
    }
}

} // namespace idpm::io
