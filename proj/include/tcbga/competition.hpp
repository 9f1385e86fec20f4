#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "tcbga/core.hpp"
#include "tcbga/evaluator.hpp"
#include "tcbga/random.hpp"

namespace tcbga {

struct CompetitionConfig {
    /// Generations between competitions.
    std::size_t interval = 2;
    std::size_t award = 1;
    std::size_t penalty = 1;
    /// No tribe is shrunk below this many individuals.
    std::size_t min_tribe_size = 2;

    void validate() const;
    friend bool operator==(const CompetitionConfig&, const CompetitionConfig&) = default;
};

/// Tribe indices by elitist, best first: fitness desc, then smaller elitist
/// popcount, then lower tribe index.
std::vector<std::size_t> rank_tribes(const Population& population);

struct Resize {
    CountHistogram target;
    /// deltas[m] = target[m] - current[m] for m in [1, N]; index 0 unused.
    std::vector<std::ptrdiff_t> deltas;

    std::ptrdiff_t net() const noexcept;
    std::size_t moved() const noexcept;
};

/// Re-apportion a tribe's Gaussian profile to `new_size`, with the same
/// largest-remainder scheme used at initialization.
Resize resize_counts(const CountHistogram& current, double mu, double sigma, std::size_t new_size);

struct CompetitionRecord {
    std::size_t generation = 0;
    std::optional<std::size_t> winner;
    std::optional<std::size_t> loser;
    /// Tribe sizes after the competition.
    std::vector<std::size_t> sizes;
};

/// Grow the best admissible tribe by `award` and shrink the worst admissible
/// one by `penalty`. New individuals are sampled at the cardinalities the
/// resize asks for and evaluated; removals take the weakest individuals of
/// each shrinking class and never the tribe's elitist. A tribe is not
/// admissible when the resize would drop it under min_tribe_size or would
/// have to remove its elitist; the next tribe in rank order stands in.
CompetitionRecord apply_competition(Population& population, const CompetitionConfig& config,
                                    const Evaluator& evaluate, Rng& rng);

} // namespace tcbga
