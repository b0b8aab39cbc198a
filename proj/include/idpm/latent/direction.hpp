#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "idpm/latent/pca.hpp"
#include "idpm/nn/matrix.hpp"
#include "idpm/oracle/dataset.hpp"

namespace idpm::latent {

enum class Provenance { binary_split, percentile_split, pca_axis };

std::string to_string(Provenance p);
Provenance parse_provenance(std::string_view text);

// A unit vector in embedding space.
struct Direction {
    Vector vector;
    std::string label;
    Provenance provenance = Provenance::binary_split;
};

// Row indices of the two groups being contrasted.
struct GroupSplit {
    std::vector<std::size_t> group_a;
    std::vector<std::size_t> group_b;
    Provenance provenance = Provenance::percentile_split;
};

inline constexpr double low_percentile = 0.10;
inline constexpr double high_percentile = 0.90;

// normalize(mean(group_b) - mean(group_a)). Throws DomainError when the means coincide.
Direction custom_direction(const std::vector<Vector>& group_a, const std::vector<Vector>& group_b,
                           std::string label = {}, Provenance provenance = Provenance::binary_split);

// Continuous features: group_a holds samples with value <= P10, group_b those
// with value >= P90 (linearly interpolated percentiles). Features taking exactly
// the values {0, 1} are split directly into value 0 vs value 1 instead.
// Throws ConfigError if any sample lacks the feature.
GroupSplit percentile_split(const std::vector<oracle::LabeledSample>& samples, const std::string& feature);

std::vector<Vector> gather_embeddings(const std::vector<oracle::LabeledSample>& samples,
                                      const std::vector<std::size_t>& indices);

// Split on `feature` and take the normalized difference of group means.
Direction metadata_direction(const std::vector<oracle::LabeledSample>& samples, const std::string& feature);

Direction pca_direction(const PcaBasis& basis, std::size_t axis);

// Mean L2 norm of the rows; the unit of traversal step sizes.
double corpus_mean_norm(const std::vector<Vector>& ys);

// y + alpha * corpus_norm * dir.vector. Throws ConfigError unless corpus_norm > 0.
Vector traverse(std::span<const double> y, const Direction& dir, double alpha, double corpus_norm);

} // namespace idpm::latent
