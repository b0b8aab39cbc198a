#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace idpm::eval {

struct VerificationPair {
    double distance = 0.0;
    bool same_identity = false;
};

struct VerificationResult {
    double threshold = 0.0;
    double accuracy = 0.0;
    std::size_t pair_count = 0;
};

// Pairs with distance < threshold are declared "same". Tries thresholds at the
// smallest distance, at every midpoint between consecutive distinct sorted
// distances, and just above the largest distance; returns the most accurate,
// preferring the smallest threshold on ties.
VerificationResult verification_accuracy(std::span<const VerificationPair> pairs);

// Accuracy of `threshold` on `pairs`.
double accuracy_at(std::span<const VerificationPair> pairs, double threshold);

struct KFoldResult {
    double mean_accuracy = 0.0;
    double mean_threshold = 0.0;
    std::vector<VerificationResult> folds;
};

// Contiguous k-fold protocol: the threshold for fold i is fitted on the other
// folds and scored on fold i. k = 1 scores the fitted threshold on all pairs.
KFoldResult verification_kfold(std::span<const VerificationPair> pairs, std::size_t k);

} // namespace idpm::eval
