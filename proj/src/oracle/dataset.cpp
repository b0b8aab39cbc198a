#include "idpm/oracle/dataset.hpp"

#include <cmath>

#include "idpm/errors.hpp"

namespace idpm::oracle {

std::string to_string(DistributionKind kind) {
    switch (kind) {
    case DistributionKind::annulus: return "annulus";
    case DistributionKind::gaussian_mixture: return "gaussian-mixture";
    case DistributionKind::clustered_identities: return "clustered-identities";
    }
    return "annulus";
}

DistributionKind parse_distribution_kind(std::string_view text) {
    if (text == "annulus") return DistributionKind::annulus;
    if (text == "gaussian-mixture") return DistributionKind::gaussian_mixture;
    if (text == "clustered-identities") return DistributionKind::clustered_identities;
    throw ConfigError("unknown distribution kind '" + std::string(text) +
                      "' (expected annulus, gaussian-mixture or clustered-identities)");
}

namespace {

const char* native_attribute(DistributionKind kind) {
    switch (kind) {
    case DistributionKind::annulus: return "angle";
    case DistributionKind::gaussian_mixture: return "offset";
    case DistributionKind::clustered_identities: return "nuisance";
    }
    return "";
}

Vector gaussian_vector(std::size_t d, double std, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, std);
    Vector v(d);
    for (double& x : v) x = normal(rng);
    return v;
}

} // namespace

void DatasetSpec::validate() const {
    if (dim < 1) throw ConfigError("dataset: dim must be at least 1");
    if (count < 1) throw ConfigError("dataset: count must be at least 1");
    if (attribute != "none" && attribute != native_attribute(kind)) {
        throw ConfigError("dataset: attribute '" + attribute + "' is not a factor of the " + to_string(kind) +
                          " distribution (expected none or " + native_attribute(kind) + ")");
    }
    switch (kind) {
    case DistributionKind::annulus:
        if (dim < 2) throw ConfigError("dataset: annulus needs dim >= 2");
        if (!(radius_min >= 0.0 && radius_max >= radius_min)) throw ConfigError("dataset: invalid annulus radii");
        break;
    case DistributionKind::gaussian_mixture:
        if (components < 1) throw ConfigError("dataset: components must be at least 1");
        if (!(component_std > 0.0)) throw ConfigError("dataset: component_std must be positive");
        break;
    case DistributionKind::clustered_identities:
        if (identities < 1) throw ConfigError("dataset: identities must be at least 1");
        if (!(nuisance_std > 0.0)) throw ConfigError("dataset: nuisance_std must be positive");
        break;
    }
}

std::size_t DatasetSpec::attribute_dim() const {
    return attribute == "none" ? 0 : 1;
}

nlohmann::json DatasetSpec::to_json() const {
    return {{"kind", to_string(kind)},
            {"dim", dim},
            {"count", count},
            {"seed", seed},
            {"attribute", attribute},
            {"radius_min", radius_min},
            {"radius_max", radius_max},
            {"components", components},
            {"component_spread", component_spread},
            {"component_std", component_std},
            {"identities", identities},
            {"identity_spread", identity_spread},
            {"nuisance_std", nuisance_std}};
}

DatasetSpec DatasetSpec::from_json(const nlohmann::json& j) {
    DatasetSpec s;
    try {
        if (j.contains("kind")) s.kind = parse_distribution_kind(j.at("kind").get<std::string>());
        s.dim = j.value("dim", s.dim);
        s.count = j.value("count", s.count);
        s.seed = j.value("seed", s.seed);
        s.attribute = j.value("attribute", s.attribute);
        s.radius_min = j.value("radius_min", s.radius_min);
        s.radius_max = j.value("radius_max", s.radius_max);
        s.components = j.value("components", s.components);
        s.component_spread = j.value("component_spread", s.component_spread);
        s.component_std = j.value("component_std", s.component_std);
        s.identities = j.value("identities", s.identities);
        s.identity_spread = j.value("identity_spread", s.identity_spread);
        s.nuisance_std = j.value("nuisance_std", s.nuisance_std);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid dataset section: ") + e.what());
    }
    return s;
}

DataDistribution::DataDistribution(DatasetSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    // Structure stream is separate from the per-draw stream.
    std::mt19937_64 rng(spec_.seed ^ 0x9e3779b97f4a7c15ULL);
    if (spec_.kind == DistributionKind::gaussian_mixture) {
        for (std::size_t c = 0; c < spec_.components; ++c) {
            centers_.push_back(gaussian_vector(spec_.dim, spec_.component_spread, rng));
        }
    } else if (spec_.kind == DistributionKind::clustered_identities) {
        for (std::size_t c = 0; c < spec_.identities; ++c) {
            centers_.push_back(gaussian_vector(spec_.dim, spec_.identity_spread, rng));
            traits_.push_back(centers_.back()[0]);
        }
    }
}

Draw DataDistribution::draw(std::mt19937_64& rng) const {
    Draw out;
    const bool export_attr = spec_.attribute != "none";
    switch (spec_.kind) {
    case DistributionKind::annulus: {
        std::uniform_real_distribution<double> radius(spec_.radius_min, spec_.radius_max);
        Vector dir;
        double n = 0.0;
        while (!(n > 0.0)) {
            dir = gaussian_vector(spec_.dim, 1.0, rng);
            n = nn::norm(dir);
        }
        const double r = radius(rng);
        out.x.resize(spec_.dim);
        for (std::size_t i = 0; i < spec_.dim; ++i) out.x[i] = r * dir[i] / n;
        const double angle = std::atan2(out.x[1], out.x[0]);
        out.metadata = {{"radius", r}, {"angle", angle}, {"upper_half", out.x[1] > 0.0 ? 1.0 : 0.0}};
        if (export_attr) out.a = Vector{angle};
        break;
    }
    case DistributionKind::gaussian_mixture: {
        std::uniform_int_distribution<std::size_t> pick(0, centers_.size() - 1);
        const std::size_t c = pick(rng);
        const Vector offset = gaussian_vector(spec_.dim, spec_.component_std, rng);
        out.x = centers_[c];
        for (std::size_t i = 0; i < spec_.dim; ++i) out.x[i] += offset[i];
        out.metadata = {{"component", static_cast<double>(c)}, {"offset_norm", nn::norm(offset)}};
        if (export_attr) out.a = Vector{offset[0]};
        break;
    }
    case DistributionKind::clustered_identities: {
        std::uniform_int_distribution<std::size_t> pick(0, centers_.size() - 1);
        const std::size_t c = pick(rng);
        const Vector nuisance = gaussian_vector(spec_.dim, spec_.nuisance_std, rng);
        out.x = centers_[c];
        for (std::size_t i = 0; i < spec_.dim; ++i) out.x[i] += nuisance[i];
        out.metadata = {{"identity", static_cast<double>(c)},
                        {"trait", traits_[c]},
                        {"marked", traits_[c] > 0.0 ? 1.0 : 0.0}};
        if (export_attr) out.a = Vector{nuisance[0]};
        break;
    }
    }
    return out;
}

std::vector<LabeledSample> generate_dataset(const DatasetSpec& spec, const Embedder& embedder) {
    const DataDistribution dist(spec);
    if (embedder.input_dim() != spec.dim) {
        throw ShapeError("generate_dataset: embedder expects d = " + std::to_string(embedder.input_dim()) +
                         ", dataset has d = " + std::to_string(spec.dim));
    }
    std::mt19937_64 rng(spec.seed);
    std::vector<LabeledSample> out;
    out.reserve(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) {
        Draw d = dist.draw(rng);
        LabeledSample s;
        s.y = embedder.embed(d.x);
        s.x = std::move(d.x);
        s.a = std::move(d.a);
        s.metadata = std::move(d.metadata);
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace idpm::oracle
