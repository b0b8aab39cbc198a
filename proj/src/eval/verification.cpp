#include "idpm/eval/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "idpm/errors.hpp"

namespace idpm::eval {

VerificationResult verification_accuracy(std::span<const VerificationPair> pairs) {
    if (pairs.empty()) throw DomainError("verification_accuracy: no pairs");
    std::vector<VerificationPair> sorted(pairs.begin(), pairs.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const VerificationPair& a, const VerificationPair& b) { return a.distance < b.distance; });
    const std::size_t n = sorted.size();

    std::size_t negatives = 0;
    for (const auto& p : sorted) negatives += p.same_identity ? 0 : 1;

    // Threshold at the smallest distance: everything is declared "different".
    std::size_t correct = negatives;
    VerificationResult best{sorted.front().distance, static_cast<double>(correct) / static_cast<double>(n), n};
    std::size_t best_correct = correct;

    for (std::size_t i = 1; i <= n; ++i) {
        // Move pair i - 1 to the "same" side.
        correct += sorted[i - 1].same_identity ? 1 : 0;
        correct -= sorted[i - 1].same_identity ? 0 : 1;
        double threshold;
        if (i == n) {
            threshold = std::nextafter(sorted.back().distance, std::numeric_limits<double>::infinity());
        } else {
            if (sorted[i].distance == sorted[i - 1].distance) continue;
            threshold = 0.5 * (sorted[i - 1].distance + sorted[i].distance);
        }
        if (correct > best_correct) {
            best_correct = correct;
            best.threshold = threshold;
            best.accuracy = static_cast<double>(correct) / static_cast<double>(n);
        }
    }
    return best;
}

double accuracy_at(std::span<const VerificationPair> pairs, double threshold) {
    if (pairs.empty()) throw DomainError("accuracy_at: no pairs");
    std::size_t correct = 0;
    for (const auto& p : pairs) correct += ((p.distance < threshold) == p.same_identity) ? 1 : 0;
    return static_cast<double>(correct) / static_cast<double>(pairs.size());
}

KFoldResult verification_kfold(std::span<const VerificationPair> pairs, std::size_t k) {
    if (k == 0 || k > pairs.size()) throw ConfigError("verification_kfold: k must lie in [1, pair count]");
    KFoldResult out;
    if (k == 1) {
        out.folds.push_back(verification_accuracy(pairs));
    } else {
        const std::size_t n = pairs.size();
        for (std::size_t f = 0; f < k; ++f) {
            const std::size_t lo = f * n / k;
            const std::size_t hi = (f + 1) * n / k;
            std::vector<VerificationPair> train;
            train.insert(train.end(), pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(lo));
            train.insert(train.end(), pairs.begin() + static_cast<std::ptrdiff_t>(hi), pairs.end());
            const VerificationResult fitted = verification_accuracy(train);
            const auto test = pairs.subspan(lo, hi - lo);
            out.folds.push_back({fitted.threshold, accuracy_at(test, fitted.threshold), test.size()});
        }
    }
    for (const auto& f : out.folds) {
        out.mean_accuracy += f.accuracy;
        out.mean_threshold += f.threshold;
    }
    out.mean_accuracy /= static_cast<double>(out.folds.size());
    out.mean_threshold /= static_cast<double>(out.folds.size());
    return out;
}

} // namespace idpm::eval
