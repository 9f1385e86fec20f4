#pragma once

/// @file core.hpp
/// @brief Individuals, tribes, populations and the cardinality histogram.
///
/// An individual selects a non-empty subset of the N candidate features. A
/// tribe keeps, for every cardinality m in [1, N], a fixed number n_m of
/// individuals that select exactly m features; every genetic operator in
/// this library leaves that histogram untouched.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tcbga/mask.hpp"

namespace tcbga {

struct Individual {
    Mask mask;
    /// Cross-validated accuracy in percent, [0, 100]. Empty until evaluated.
    std::optional<double> fitness;

    Individual() = default;
    explicit Individual(Mask m, std::optional<double> f = std::nullopt)
        : mask(std::move(m)), fitness(f) {}

    friend bool operator==(const Individual&, const Individual&) = default;
};

/// Counts n_m of individuals per cardinality m, for m in [1, N].
class CountHistogram {
public:
    CountHistogram() = default;
    explicit CountHistogram(std::size_t n_features) : counts_(n_features + 1, 0) {}

    std::size_t n_features() const noexcept { return counts_.empty() ? 0 : counts_.size() - 1; }

    /// Throws std::out_of_range for m outside [1, N].
    std::size_t& operator[](std::size_t m);
    std::size_t operator[](std::size_t m) const;

    std::size_t total() const noexcept;
    bool empty() const noexcept { return total() == 0; }

    /// Smallest and largest cardinality with a non-zero count (0 when empty).
    std::size_t min_cardinality() const noexcept;
    std::size_t max_cardinality() const noexcept;

    friend bool operator==(const CountHistogram&, const CountHistogram&) = default;

private:
    std::vector<std::size_t> counts_;
};

struct Tribe {
    std::vector<Individual> individuals;
    double mu = 0.0;
    double sigma = 1.0;

    std::size_t size() const noexcept { return individuals.size(); }
};

struct Population {
    std::vector<Tribe> tribes;

    std::size_t total_size() const noexcept;
    std::vector<std::size_t> tribe_sizes() const;
};

/// Popcount of the selection mask.
std::size_t count_selected(const Individual& ind) noexcept;

/// Histogram of cardinalities over the tribe. `n_features` fixes the domain;
/// pass 0 to infer it from the first individual's mask length.
CountHistogram histogram(const Tribe& tribe, std::size_t n_features = 0);
CountHistogram histogram(std::span<const Individual> individuals, std::size_t n_features);

/// Index of the highest-fitness individual; ties go to the smaller popcount,
/// then the lower index. Throws std::invalid_argument when the tribe is
/// empty or any fitness is missing.
std::size_t best_index(std::span<const Individual> individuals);
const Individual& best_individual(const Tribe& tribe);

/// Strict "better than" under the same ordering best_index uses
/// (fitness desc, then popcount asc). Both fitnesses must be present.
bool fitter(const Individual& a, const Individual& b);

} // namespace tcbga
