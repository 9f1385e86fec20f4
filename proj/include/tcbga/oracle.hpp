#pragma once

#include <cstddef>
#include <cstdint>

#include "tcbga/core.hpp"
#include "tcbga/evaluator.hpp"
#include "tcbga/fitness.hpp"

namespace tcbga {

struct OracleResult {
    Mask best_mask;
    double best_accuracy = 0.0;
    std::uint64_t evaluated_count = 0;
    double wall_seconds = 0.0;
};

struct ExhaustiveOptions {
    std::size_t cap = 20;
    /// Permit N above the cap.
    bool force = false;
    unsigned threads = 1;
};

/// Evaluate every non-empty subset of N features and return the best.
/// Ties go to the smaller popcount, then the lexicographically smallest
/// mask string, so the answer does not depend on evaluation order.
/// Throws ConfigError when N exceeds the cap without `force`.
OracleResult exhaustive_best_subset(std::size_t n_features, const FitnessFn& fitness,
                                    const ExhaustiveOptions& options = {});
OracleResult exhaustive_best_subset(const Dataset& dataset, const FitnessProtocol& protocol,
                                    const ExhaustiveOptions& options = {});

/// True when (acc_a, mask_a) beats (acc_b, mask_b) under the oracle's order.
bool oracle_prefers(double acc_a, const Mask& a, double acc_b, const Mask& b);

/// Histogram recount by a naive per-bit loop, sharing no code with
/// core::histogram.
CountHistogram brute_force_histogram(const Tribe& tribe, std::size_t n_features);

} // namespace tcbga
