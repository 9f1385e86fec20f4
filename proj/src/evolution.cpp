#include "tcbga/evolution.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tcbga/error.hpp"

namespace tcbga {

namespace {

void require_fitness(std::span<const Individual> individuals) {
    for (const auto& ind : individuals)
        if (!ind.fitness) throw std::invalid_argument("individual without fitness");
}

std::size_t uniform_index(std::size_t n, Rng& rng) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool coin(double p, Rng& rng) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return std::bernoulli_distribution(p)(rng);
}

// Sets random clear bits until the mask holds `target` features.
void repair(Mask& child, std::size_t target, Rng& rng) {
    std::size_t have = child.count();
    if (have >= target) return;
    auto zeros = child.clear_indices();
    while (have < target) {
        const std::size_t k = uniform_index(zeros.size(), rng);
        child.set(zeros[k]);
        zeros[k] = zeros.back();
        zeros.pop_back();
        ++have;
    }
}

} // namespace

void EvolutionConfig::validate() const {
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
        throw ConfigError("crossover_rate must lie in [0, 1]");
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
        throw ConfigError("mutation_rate must lie in [0, 1]");
    if (!(selection_pressure > 1.0 && selection_pressure <= 2.0))
        throw ConfigError("selection_pressure must lie in (1, 2]");
}

std::vector<double> rank_probabilities(std::span<const Individual> individuals, double pressure) {
    require_fitness(individuals);
    const std::size_t n = individuals.size();
    std::vector<double> p(n, 0.0);
    if (n == 0) return p;
    if (n == 1) {
        p[0] = 1.0;
        return p;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return *individuals[a].fitness < *individuals[b].fitness;
    });

    const double dn = static_cast<double>(n);
    auto law = [&](double rank) {
        return (2.0 - pressure + 2.0 * (pressure - 1.0) * (rank - 1.0) / (dn - 1.0)) / dn;
    };
    for (std::size_t lo = 0; lo < n;) {
        std::size_t hi = lo + 1;
        while (hi < n && *individuals[order[hi]].fitness == *individuals[order[lo]].fitness) ++hi;
        // Ranks lo+1 .. hi share their mean.
        const double mean_rank = (static_cast<double>(lo + 1) + static_cast<double>(hi)) / 2.0;
        for (std::size_t k = lo; k < hi; ++k) p[order[k]] = law(mean_rank);
        lo = hi;
    }
    return p;
}

std::vector<std::size_t> rank_selection(const Tribe& tribe, const EvolutionConfig& config, Rng& rng) {
    const auto& inds = tribe.individuals;
    const auto probs = rank_probabilities(inds, config.selection_pressure);
    std::vector<std::size_t> picks(inds.size());
    if (inds.empty()) return picks;

    std::discrete_distribution<std::size_t> draw(probs.begin(), probs.end());
    for (auto& p : picks) p = draw(rng);

    const std::size_t elitist = best_index(inds);
    if (std::find(picks.begin(), picks.end(), elitist) == picks.end())
        picks[uniform_index(picks.size(), rng)] = elitist;
    return picks;
}

std::optional<std::pair<Mask, Mask>> count_preserving_crossover(const Mask& parent_i,
                                                                const Mask& parent_j,
                                                                std::size_t cut_i, Rng& rng) {
    const std::size_t n = parent_i.size();
    if (parent_j.size() != n) throw std::invalid_argument("parents differ in length");
    if (cut_i > n) throw std::out_of_range("cut position beyond mask length");

    const std::size_t moved = parent_i.count_prefix(cut_i);
    if (parent_j.count() < moved) return std::nullopt;

    std::size_t cut_j = 0;
    for (std::size_t seen = 0; seen < moved; ++cut_j)
        if (parent_j.test(cut_j)) ++seen;

    // child_i = prefix_j + suffix_i; child_j = prefix_i + suffix_j. Bits in
    // both halves collapse, so a child can only fall short of its parent.
    Mask child_i(n);
    Mask child_j(n);
    for (std::size_t b = 0; b < n; ++b) {
        if ((b < cut_j && parent_j.test(b)) || (b >= cut_i && parent_i.test(b))) child_i.set(b);
        if ((b < cut_i && parent_i.test(b)) || (b >= cut_j && parent_j.test(b))) child_j.set(b);
    }

    repair(child_i, parent_i.count(), rng);
    repair(child_j, parent_j.count(), rng);
    return std::pair{std::move(child_i), std::move(child_j)};
}

MutationStats paired_mutation(Tribe& tribe, const EvolutionConfig& config, Rng& rng) {
    MutationStats stats;
    auto& inds = tribe.individuals;
    if (config.mutation_rate <= 0.0 || inds.size() < 2) return stats;

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < inds.size(); ++i) {
        if (!coin(config.mutation_rate, rng)) continue;
        Mask& mask = inds[i].mask;
        const std::size_t bit = uniform_index(mask.size(), rng);
        const std::size_t m = mask.count();
        const bool adding = !mask.test(bit);
        const std::size_t partner_class = adding ? m + 1 : m - 1;

        candidates.clear();
        if (partner_class >= 1 && partner_class <= mask.size()) {
            for (std::size_t j = 0; j < inds.size(); ++j)
                if (j != i && inds[j].mask.count() == partner_class) candidates.push_back(j);
        }
        if (candidates.empty()) {
            ++stats.cancelled;
            continue;
        }

        Individual& partner = inds[candidates[uniform_index(candidates.size(), rng)]];
        const auto pool = adding ? partner.mask.set_indices() : partner.mask.clear_indices();
        partner.mask.flip(pool[uniform_index(pool.size(), rng)]);
        partner.fitness.reset();
        mask.flip(bit);
        inds[i].fitness.reset();
        ++stats.applied;
    }
    return stats;
}

GenerationStats evolve_generation(Tribe& tribe, const EvolutionConfig& config,
                                  const Evaluator& evaluate, Rng& rng) {
    GenerationStats stats;
    auto& original = tribe.individuals;
    if (original.empty()) return stats;
    require_fitness(original);

    const Individual elitist = original[best_index(original)];
    const std::size_t n_features = elitist.mask.size();

    // Selected parents grouped by cardinality, in draw order.
    const auto picks = rank_selection(tribe, config, rng);
    std::vector<std::vector<std::size_t>> by_class(n_features + 1);
    for (auto p : picks) by_class[original[p].mask.count()].push_back(p);
    std::vector<std::size_t> cursor(n_features + 1, 0);

    std::vector<Individual> next;
    next.reserve(original.size());
    for (const auto& self : original) {
        const std::size_t m = self.mask.count();
        auto& bucket = by_class[m];
        if (bucket.empty()) {
            next.push_back(self);
            continue;
        }
        const Individual& mate = original[bucket[cursor[m]++ % bucket.size()]];
        if (n_features < 2 || !coin(config.crossover_rate, rng)) {
            next.push_back(mate);
            continue;
        }
        const std::size_t cut =
            std::uniform_int_distribution<std::size_t>(1, n_features - 1)(rng);
        auto children = count_preserving_crossover(self.mask, mate.mask, cut, rng);
        // Equal popcounts always admit a matching cut.
        const bool keep_first = coin(0.5, rng);
        Mask child = keep_first ? std::move(children->first) : std::move(children->second);
        if (child == mate.mask) {
            next.push_back(mate);
        } else if (child == self.mask) {
            next.push_back(self);
        } else {
            next.emplace_back(std::move(child));
        }
        ++stats.crossovers;
    }

    tribe.individuals = std::move(next);
    stats.mutations = paired_mutation(tribe, config, rng);
    stats.evaluations = evaluate(tribe.individuals);

    // The prior elitist replaces the weakest member of its own class.
    const std::size_t elite_class = elitist.mask.count();
    std::optional<std::size_t> weakest;
    for (std::size_t i = 0; i < tribe.individuals.size(); ++i) {
        const auto& ind = tribe.individuals[i];
        if (ind.mask.count() != elite_class) continue;
        if (!weakest || *ind.fitness < *tribe.individuals[*weakest].fitness) weakest = i;
    }
    if (weakest) tribe.individuals[*weakest] = elitist;
    return stats;
}

} // namespace tcbga
