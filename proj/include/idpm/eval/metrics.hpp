#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "idpm/nn/matrix.hpp"
#include "idpm/oracle/embedder.hpp"

namespace idpm::eval {

enum class Metric { angular, euclidean };

std::string to_string(Metric m);
Metric parse_metric(std::string_view text);

// Distance between two embeddings under `metric`. `mean` is subtracted first
// for the angular metric.
double embedding_distance(std::span<const double> a, std::span<const double> b, Metric metric,
                          std::optional<std::span<const double>> mean = std::nullopt);

// Mean over rows x of distance(embedder.embed(x), target).
double identity_error(const nn::Matrix& samples, std::span<const double> target, const oracle::Embedder& embedder,
                      Metric metric, std::optional<std::span<const double>> mean = std::nullopt);

// Mean Euclidean distance over all unordered pairs of rows. Stands in for
// perceptual pairwise diversity on abstract vectors.
double diversity(const nn::Matrix& samples);

// Empirical energy distance 2 E|a - b| - E|a - a'| - E|b - b'|, with every
// expectation a mean over all ordered pairs (self-pairs included).
double energy_distance(const nn::Matrix& a, const nn::Matrix& b);

} // namespace idpm::eval
