#include "idpm/eval/metrics.hpp"

#include <cmath>

#include "idpm/errors.hpp"
#include "idpm/oracle/distance.hpp"

namespace idpm::eval {

std::string to_string(Metric m) {
    return m == Metric::angular ? "angular" : "euclidean";
}

Metric parse_metric(std::string_view text) {
    if (text == "angular") return Metric::angular;
    if (text == "euclidean") return Metric::euclidean;
    throw ConfigError("unknown metric '" + std::string(text) + "' (expected angular or euclidean)");
}

double embedding_distance(std::span<const double> a, std::span<const double> b, Metric metric,
                          std::optional<std::span<const double>> mean) {
    if (metric == Metric::angular) return oracle::angular_distance(a, b, mean);
    return nn::distance(a, b);
}

double identity_error(const nn::Matrix& samples, std::span<const double> target, const oracle::Embedder& embedder,
                      Metric metric, std::optional<std::span<const double>> mean) {
    if (samples.rows() == 0) throw DomainError("identity_error: no samples");
    double total = 0.0;
    for (std::size_t r = 0; r < samples.rows(); ++r) {
        total += embedding_distance(embedder.embed(samples.row(r)), target, metric, mean);
    }
    return total / static_cast<double>(samples.rows());
}

double diversity(const nn::Matrix& samples) {
    const std::size_t n = samples.rows();
    if (n < 2) throw DomainError("diversity: at least two samples are required");
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) total += nn::distance(samples.row(i), samples.row(j));
    }
    return total / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

namespace {

double mean_cross_distance(const nn::Matrix& a, const nn::Matrix& b) {
    double total = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.rows(); ++j) total += nn::distance(a.row(i), b.row(j));
    }
    return total / (static_cast<double>(a.rows()) * static_cast<double>(b.rows()));
}

} // namespace

double energy_distance(const nn::Matrix& a, const nn::Matrix& b) {
    if (a.rows() == 0 || b.rows() == 0) throw DomainError("energy_distance: both sample sets must be nonempty");
    if (a.cols() != b.cols()) throw ShapeError("energy_distance: sample dimensions differ");
    return 2.0 * mean_cross_distance(a, b) - mean_cross_distance(a, a) - mean_cross_distance(b, b);
}

} // namespace idpm::eval
