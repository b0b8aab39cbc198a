#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "idpm/nn/matrix.hpp"
#include "idpm/oracle/embedder.hpp"

namespace idpm::oracle {

enum class DistributionKind { annulus, gaussian_mixture, clustered_identities };

std::string to_string(DistributionKind kind);
DistributionKind parse_distribution_kind(std::string_view text);

// Synthetic input distributions with known generative factors.
//
//   annulus               radius ~ U[radius_min, radius_max], direction uniform.
//                         metadata: radius, angle, upper_half (binary). attribute "angle".
//   gaussian-mixture      `components` means ~ N(0, component_spread^2 I), each sample
//                         mean + N(0, component_std^2 I).
//                         metadata: component, offset_norm. attribute "offset".
//   clustered-identities  `identities` centers ~ N(0, identity_spread^2 I), each sample
//                         center + N(0, nuisance_std^2 I).
//                         metadata: identity, trait (center's first coordinate),
//                         marked (binary, trait > 0). attribute "nuisance".
//
// `attribute` names the identity-agnostic factor exported as a, or "none".
struct DatasetSpec {
    DistributionKind kind = DistributionKind::annulus;
    std::size_t dim = 2;
    std::size_t count = 1000;
    std::uint64_t seed = 0;
    std::string attribute = "none";

    double radius_min = 0.5;
    double radius_max = 1.5;

    std::size_t components = 4;
    double component_spread = 2.0;
    double component_std = 0.3;

    std::size_t identities = 20;
    double identity_spread = 1.0;
    double nuisance_std = 0.2;

    void validate() const;
    // Width of the exported attribute vector (0 for "none").
    std::size_t attribute_dim() const;

    nlohmann::json to_json() const;
    static DatasetSpec from_json(const nlohmann::json& j);
};

struct LabeledSample {
    Vector x;
    Vector y;
    std::optional<Vector> a;
    std::map<std::string, double> metadata;

    friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

// A single draw from the input distribution, before embedding.
struct Draw {
    Vector x;
    std::optional<Vector> a;
    std::map<std::string, double> metadata;
};

// Sampler for the distribution described by a DatasetSpec. Fixed structure
// (mixture means, identity centers) is derived from spec.seed at construction.
class DataDistribution {
public:
    explicit DataDistribution(DatasetSpec spec);

    const DatasetSpec& spec() const noexcept { return spec_; }
    Draw draw(std::mt19937_64& rng) const;

private:
    DatasetSpec spec_;
    std::vector<Vector> centers_;
    Vector traits_;
};

// Pure function of (spec, embedder): count draws, each embedded with `embedder`.
std::vector<LabeledSample> generate_dataset(const DatasetSpec& spec, const Embedder& embedder);

} // namespace idpm::oracle
