#pragma once

/// @file evolution.hpp
/// @brief One intra-tribe generation: rank selection, count-preserving
/// crossover, paired mutation and elitist inheritance.
///
/// Every operator here keeps the tribe's cardinality histogram fixed.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "tcbga/core.hpp"
#include "tcbga/evaluator.hpp"
#include "tcbga/random.hpp"

namespace tcbga {

struct EvolutionConfig {
    double crossover_rate = 0.8;
    /// Probability that an individual receives one primary bit flip.
    double mutation_rate = 0.1;
    /// Linear ranking pressure s in (1, 2]; the best rank is drawn with
    /// probability s / n, the worst with (2 - s) / n.
    double selection_pressure = 1.8;

    /// Throws ConfigError when a field is out of range.
    void validate() const;
    friend bool operator==(const EvolutionConfig&, const EvolutionConfig&) = default;
};

/// Linear-ranking probabilities, one per individual. Individuals with equal
/// fitness share the mean probability of the ranks they span.
std::vector<double> rank_probabilities(std::span<const Individual> individuals, double pressure);

/// N_Tk parent indices drawn with replacement by rank; the elitist is
/// always among them.
std::vector<std::size_t> rank_selection(const Tribe& tribe, const EvolutionConfig& config, Rng& rng);

/// Swap prefixes so both parents exchange the same number of selected
/// features. `cut_i` splits parent_i into [0, cut_i) and [cut_i, N); the cut
/// in parent_j is the smallest position whose prefix holds as many set bits.
/// Children that lose features to duplication get random zero bits set
/// until they match their parent's popcount. Returns nullopt when parent_j
/// has too few set bits to match the prefix.
std::optional<std::pair<Mask, Mask>> count_preserving_crossover(const Mask& parent_i,
                                                                const Mask& parent_j,
                                                                std::size_t cut_i, Rng& rng);

struct MutationStats {
    std::size_t applied = 0;
    std::size_t cancelled = 0;
};

/// Each individual mutates one random bit with probability mutation_rate; a
/// partner one cardinality class away takes the opposite flip. Primaries
/// with no eligible partner are cancelled. Touched individuals lose their
/// fitness.
MutationStats paired_mutation(Tribe& tribe, const EvolutionConfig& config, Rng& rng);

struct GenerationStats {
    std::size_t crossovers = 0;
    MutationStats mutations;
    std::size_t evaluations = 0;
};

/// Replaces `tribe` with its next generation. All fitness values must be
/// present on entry and are present on exit.
GenerationStats evolve_generation(Tribe& tribe, const EvolutionConfig& config,
                                  const Evaluator& evaluate, Rng& rng);

} // namespace tcbga
