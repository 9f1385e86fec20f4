#pragma once

/// @file fitness.hpp
/// @brief Wrapper fitness: k-fold cross-validated accuracy of a classifier
/// trained on the selected features only.
///
/// Folds are fixed once per protocol, so two masks are always scored on
/// the same splits. Features are z-scored with training-fold statistics.

#include <atomic>
#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "tcbga/classifier.hpp"
#include "tcbga/data.hpp"
#include "tcbga/evaluator.hpp"
#include "tcbga/mask.hpp"

namespace tcbga {

struct FitnessProtocol {
    ClassifierKind classifier = ClassifierKind::LinearSvm;
    std::size_t folds = 10;
    std::uint64_t fold_seed = 1;
    /// Soft-margin penalty for linear-svm.
    double regularization = 1.0;
    /// Neighbors for knn.
    std::size_t neighbors = 5;
    /// Fraction of each training fold actually used to fit, for very large
    /// datasets. Empty means the whole fold.
    std::optional<double> subsample;

    void validate() const;
    friend bool operator==(const FitnessProtocol&, const FitnessProtocol&) = default;
};

class WrapperFitness {
public:
    WrapperFitness(const Dataset& dataset, FitnessProtocol protocol);

    /// Mean test-fold accuracy in percent. Thread-safe and deterministic.
    double accuracy(const Mask& mask) const;
    double operator()(const Mask& mask) const { return accuracy(mask); }

    const FitnessProtocol& protocol() const noexcept { return protocol_; }
    const FoldPlan& folds() const noexcept { return folds_; }
    std::size_t n_features() const noexcept { return n_features_; }
    /// Folds reduced, solver caps hit, and similar notices.
    std::vector<std::string> warnings() const;
    /// Number of accuracy() calls so far.
    std::size_t evaluations() const noexcept { return evaluations_.load(); }

private:
    struct Fold {
        std::vector<double> train;
        std::vector<int> train_labels;
        std::vector<double> test;
        std::vector<int> test_labels;
    };

    double fold_accuracy(const Fold& fold, const std::vector<std::size_t>& columns) const;

    FitnessProtocol protocol_;
    std::size_t n_features_ = 0;
    std::size_t n_classes_ = 0;
    FoldPlan folds_;
    std::vector<Fold> fold_data_;
    mutable std::atomic<std::size_t> evaluations_{0};
    mutable std::atomic<std::size_t> solver_caps_{0};
};

/// One-off evaluation; builds the folds for this call only.
double kfold_accuracy(const Dataset& dataset, const Mask& mask, const FitnessProtocol& protocol);

/// Exact-mask memo of fitness values, safe for concurrent use.
class FitnessCache {
public:
    std::optional<double> find(const Mask& mask) const;
    void insert(const Mask& mask, double value);
    std::size_t size() const;
    std::size_t hits() const noexcept { return hits_.load(); }
    std::size_t misses() const noexcept { return misses_.load(); }

private:
    friend double cached_fitness(FitnessCache&, const Mask&, const FitnessFn&);

    mutable std::shared_mutex mutex_;
    std::unordered_map<Mask, double, MaskHash> values_;
    mutable std::atomic<std::size_t> hits_{0};
    mutable std::atomic<std::size_t> misses_{0};
};

/// Cached value when present; otherwise evaluate, store and return.
/// Evaluation errors propagate and nothing is stored.
double cached_fitness(FitnessCache& cache, const Mask& mask, const FitnessFn& evaluate);

/// FitnessFn that consults `cache` before `evaluate`. Both must outlive it.
FitnessFn with_cache(FitnessCache& cache, FitnessFn evaluate);

} // namespace tcbga
