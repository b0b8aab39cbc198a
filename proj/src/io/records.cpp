#include "idpm/io/records.hpp"

#include <functional>

#include "idpm/errors.hpp"
#include "idpm/io/binary.hpp"

namespace idpm::io {

namespace {

constexpr const char* dataset_format = "idpm-dataset";
constexpr const char* direction_format = "idpm-direction";
constexpr const char* pca_format = "idpm-pca";

void check_format(const nlohmann::json& j, const char* expected) {
    if (!j.is_object() || j.value("format", std::string{}) != expected) {
        throw FormatError("format", std::string("expected a '") + expected + "' record");
    }
}

template <class F>
auto guarded(const char* field, F&& f) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(field, e.what());
    }
}

} // namespace

nlohmann::json to_json(const DatasetRecord& record) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : record.samples) {
        nlohmann::json js{{"x", s.x}, {"y", s.y}, {"metadata", s.metadata}};
        if (s.a) js["a"] = *s.a;
        samples.push_back(std::move(js));
    }
    return {{"format", dataset_format},
            {"spec", record.spec.to_json()},
            {"embedder", record.embedder},
            {"samples", std::move(samples)}};
}

DatasetRecord dataset_from_json(const nlohmann::json& j) {
    check_format(j, dataset_format);
    DatasetRecord r;
    r.spec = oracle::DatasetSpec::from_json(j.at("spec"));
    r.embedder = j.value("embedder", nlohmann::json::object());
    guarded("samples", [&] {
        for (const auto& js : j.at("samples")) {
            oracle::LabeledSample s;
            s.x = js.at("x").get<Vector>();
            s.y = js.at("y").get<Vector>();
            if (js.contains("a")) s.a = js.at("a").get<Vector>();
            s.metadata = js.value("metadata", std::map<std::string, double>{});
            r.samples.push_back(std::move(s));
        }
        return 0;
    });
    return r;
}

void save_dataset(const DatasetRecord& record, const std::filesystem::path& path) {
    write_json(to_json(record), path);
}

DatasetRecord load_dataset(const std::filesystem::path& path) {
    return dataset_from_json(read_json(path));
}

namespace {

nn::Matrix stack(const std::vector<oracle::LabeledSample>& samples, const char* what,
                 const std::function<const Vector&(const oracle::LabeledSample&)>& get) {
    if (samples.empty()) throw ShapeError(std::string(what) + ": no samples");
    const std::size_t w = get(samples.front()).size();
    nn::Matrix m(samples.size(), w);
    for (std::size_t r = 0; r < samples.size(); ++r) {
        const Vector& v = get(samples[r]);
        if (v.size() != w) {
            throw ShapeError(std::string(what) + ": sample " + std::to_string(r) + " has width " +
                             std::to_string(v.size()) + ", expected " + std::to_string(w));
        }
        m.set_row(r, v);
    }
    return m;
}

} // namespace

diffusion::TrainingSet to_training_set(const std::vector<oracle::LabeledSample>& samples, bool with_attributes) {
    diffusion::TrainingSet set;
    set.x = stack(samples, "x", [](const oracle::LabeledSample& s) -> const Vector& { return s.x; });
    set.y = stack(samples, "y", [](const oracle::LabeledSample& s) -> const Vector& { return s.y; });
    if (with_attributes) {
        set.a = stack(samples, "a", [](const oracle::LabeledSample& s) -> const Vector& {
            if (!s.a) throw ShapeError("a: attributes requested but the dataset has none");
            return *s.a;
        });
    }
    return set;
}

nn::Matrix embeddings_matrix(const std::vector<oracle::LabeledSample>& samples) {
    return stack(samples, "y", [](const oracle::LabeledSample& s) -> const Vector& { return s.y; });
}

nlohmann::json to_json(const latent::Direction& dir) {
    return {{"format", direction_format},
            {"vector", dir.vector},
            {"label", dir.label},
            {"provenance", latent::to_string(dir.provenance)}};
}

latent::Direction direction_from_json(const nlohmann::json& j) {
    check_format(j, direction_format);
    return guarded("direction", [&] {
        latent::Direction d;
        d.vector = j.at("vector").get<Vector>();
        d.label = j.value("label", std::string{});
        d.provenance = latent::parse_provenance(j.at("provenance").get<std::string>());
        return d;
    });
}

nlohmann::json to_json(const latent::PcaBasis& basis) {
    return {{"format", pca_format}, {"mean", basis.mean}, {"axes", basis.axes}, {"eigenvalues", basis.eigenvalues}};
}

latent::PcaBasis pca_from_json(const nlohmann::json& j) {
    check_format(j, pca_format);
    return guarded("pca", [&] {
        latent::PcaBasis b;
        b.mean = j.at("mean").get<Vector>();
        b.axes = j.at("axes").get<std::vector<Vector>>();
        b.eigenvalues = j.at("eigenvalues").get<Vector>();
        return b;
    });
}

nlohmann::json read_json(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    try {
        return nlohmann::json::parse(bytes.begin(), bytes.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError("json", path.string() + ": " + e.what());
    }
}

void write_json(const nlohmann::json& j, const std::filesystem::path& path) {
    write_file_atomic(path, j.dump(1) + "\n");
}

} // namespace idpm::io
