#include "idpm/latent/direction.hpp"

#include <algorithm>
#include <cmath>

#include "idpm/errors.hpp"
#include "idpm/nn/stats.hpp"
#include "idpm/oracle/distance.hpp"

namespace idpm::latent {

std::string to_string(Provenance p) {
    switch (p) {
    case Provenance::binary_split: return "binary-split";
    case Provenance::percentile_split: return "percentile-split";
    case Provenance::pca_axis: return "pca-axis";
    }
    return "binary-split";
}

Provenance parse_provenance(std::string_view text) {
    if (text == "binary-split") return Provenance::binary_split;
    if (text == "percentile-split") return Provenance::percentile_split;
    if (text == "pca-axis") return Provenance::pca_axis;
    throw ConfigError("unknown direction provenance '" + std::string(text) + "'");
}

Direction custom_direction(const std::vector<Vector>& group_a, const std::vector<Vector>& group_b,
                           std::string label, Provenance provenance) {
    if (group_a.empty() || group_b.empty()) throw DomainError("custom_direction: both groups must be nonempty");
    const Vector ma = oracle::mean_embedding(group_a);
    const Vector mb = oracle::mean_embedding(group_b);
    nn::require_same_size(ma, mb, "custom_direction");
    Vector diff(ma.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = mb[i] - ma[i];
    const double n = nn::norm(diff);
    const double scale = std::max({1.0, nn::norm(ma), nn::norm(mb)});
    if (!(n > 1e-12 * scale)) {
        throw DomainError("custom_direction: group means coincide, direction is undefined");
    }
    for (double& v : diff) v /= n;
    return {std::move(diff), std::move(label), provenance};
}

GroupSplit percentile_split(const std::vector<oracle::LabeledSample>& samples, const std::string& feature) {
    if (samples.empty()) throw DomainError("percentile_split: no samples");
    Vector values;
    values.reserve(samples.size());
    for (const auto& s : samples) {
        const auto it = s.metadata.find(feature);
        if (it == s.metadata.end()) throw ConfigError("percentile_split: sample is missing feature '" + feature + "'");
        values.push_back(it->second);
    }

    GroupSplit split;
    const bool zero_one = std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0 || v == 1.0; });
    const bool both = std::find(values.begin(), values.end(), 0.0) != values.end() &&
                      std::find(values.begin(), values.end(), 1.0) != values.end();
    if (zero_one && both) {
        split.provenance = Provenance::binary_split;
        for (std::size_t i = 0; i < values.size(); ++i) (values[i] == 0.0 ? split.group_a : split.group_b).push_back(i);
        return split;
    }

    const double lo = nn::percentile(values, low_percentile);
    const double hi = nn::percentile(values, high_percentile);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] <= lo) split.group_a.push_back(i);
        if (values[i] >= hi) split.group_b.push_back(i);
    }
    return split;
}

std::vector<Vector> gather_embeddings(const std::vector<oracle::LabeledSample>& samples,
                                      const std::vector<std::size_t>& indices) {
    std::vector<Vector> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) out.push_back(samples.at(i).y);
    return out;
}

Direction metadata_direction(const std::vector<oracle::LabeledSample>& samples, const std::string& feature) {
    const GroupSplit split = percentile_split(samples, feature);
    return custom_direction(gather_embeddings(samples, split.group_a), gather_embeddings(samples, split.group_b),
                            feature, split.provenance);
}

Direction pca_direction(const PcaBasis& basis, std::size_t axis) {
    if (axis >= basis.axes.size()) throw ConfigError("pca_direction: axis index out of range");
    return {basis.axes[axis], "pc" + std::to_string(axis + 1), Provenance::pca_axis};
}

double corpus_mean_norm(const std::vector<Vector>& ys) {
    if (ys.empty()) throw DomainError("corpus_mean_norm: empty corpus");
    double s = 0.0;
    for (const auto& y : ys) s += nn::norm(y);
    return s / static_cast<double>(ys.size());
}

Vector traverse(std::span<const double> y, const Direction& dir, double alpha, double corpus_norm) {
    nn::require_same_size(y, dir.vector, "traverse");
    if (!(corpus_norm > 0.0)) throw ConfigError("traverse: corpus norm must be positive");
    const double step = alpha * corpus_norm;
    Vector out(y.begin(), y.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += step * dir.vector[i];
    return out;
}

} // namespace idpm::latent
