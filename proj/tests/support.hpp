#pragma once

// Shared fixtures: a cheap deterministic fitness and evaluated populations.

#include <cstdint>

#include "tcbga/core.hpp"
#include "tcbga/evaluator.hpp"
#include "tcbga/genesis.hpp"
#include "tcbga/params.hpp"
#include "tcbga/random.hpp"

namespace tcbga::test {

/// Rewards features 0..relevant-1 and penalizes every selected feature a
/// little, so the optimum selects exactly the relevant ones.
inline double synthetic_fitness(const Mask& m, std::size_t relevant = 3) {
    double score = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m.test(i)) continue;
        score += i < relevant ? 20.0 : 0.0;
        score -= 0.5 + 0.01 * static_cast<double>(i % 7);
    }
    return 40.0 + score;
}

inline Evaluator synthetic_evaluator(std::size_t relevant = 3) {
    return Evaluator{[relevant](const Mask& m) { return synthetic_fitness(m, relevant); }, 1};
}

inline Population evaluated_population(const TribePlan& plan, std::uint64_t seed, const Evaluator& eval) {
    Rng rng(seed);
    Population pop = init_population(plan, rng);
    for (auto& t : pop.tribes) eval(t.individuals);
    return pop;
}

} // namespace tcbga::test
