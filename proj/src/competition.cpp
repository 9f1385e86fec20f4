#include "tcbga/competition.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "tcbga/error.hpp"
#include "tcbga/genesis.hpp"

namespace tcbga {

namespace {

std::size_t feature_count(const Population& pop) {
    for (const auto& t : pop.tribes)
        if (!t.individuals.empty()) return t.individuals.front().mask.size();
    return 0;
}

// A resize is admissible when every shrinking class has enough members
// besides the elitist to give up.
bool admissible(const Tribe& tribe, const Resize& r, std::size_t elitist) {
    const std::size_t elite_class = tribe.individuals[elitist].mask.count();
    const CountHistogram current = histogram(tribe);
    for (std::size_t m = 1; m < r.deltas.size(); ++m) {
        if (r.deltas[m] >= 0) continue;
        const std::size_t spare = current[m] - (m == elite_class ? 1 : 0);
        if (static_cast<std::size_t>(-r.deltas[m]) > spare) return false;
    }
    return true;
}

void shrink(Tribe& tribe, const Resize& r, std::size_t elitist) {
    std::vector<bool> drop(tribe.size(), false);
    for (std::size_t m = 1; m < r.deltas.size(); ++m) {
        if (r.deltas[m] >= 0) continue;
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < tribe.size(); ++i)
            if (i != elitist && tribe.individuals[i].mask.count() == m) members.push_back(i);
        std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            const double fa = *tribe.individuals[a].fitness;
            const double fb = *tribe.individuals[b].fitness;
            if (fa != fb) return fa < fb;
            return a > b;
        });
        for (std::ptrdiff_t k = 0; k < -r.deltas[m]; ++k) drop[members[static_cast<std::size_t>(k)]] = true;
    }
    std::vector<Individual> kept;
    kept.reserve(tribe.size());
    for (std::size_t i = 0; i < tribe.size(); ++i)
        if (!drop[i]) kept.push_back(std::move(tribe.individuals[i]));
    tribe.individuals = std::move(kept);
}

void grow(Tribe& tribe, const Resize& r, std::size_t n_features, Rng& rng) {
    for (std::size_t m = 1; m < r.deltas.size(); ++m)
        for (std::ptrdiff_t k = 0; k < r.deltas[m]; ++k)
            tribe.individuals.push_back(sample_individual(n_features, m, rng));
}

} // namespace

void CompetitionConfig::validate() const {
    if (interval < 1) throw ConfigError("competition interval must be >= 1");
    if (award != penalty) throw ConfigError("award and penalty must be equal to conserve the population");
    if (min_tribe_size < 1) throw ConfigError("min_tribe_size must be >= 1");
}

std::ptrdiff_t Resize::net() const noexcept {
    return std::accumulate(deltas.begin(), deltas.end(), std::ptrdiff_t{0});
}

std::size_t Resize::moved() const noexcept {
    std::size_t s = 0;
    for (auto d : deltas) s += static_cast<std::size_t>(d < 0 ? -d : d);
    return s;
}

std::vector<std::size_t> rank_tribes(const Population& population) {
    std::vector<const Individual*> champions;
    for (const auto& t : population.tribes) {
        if (t.individuals.empty()) throw std::invalid_argument("cannot rank an empty tribe");
        champions.push_back(&best_individual(t));
    }
    std::vector<std::size_t> order(population.tribes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return fitter(*champions[a], *champions[b]);
    });
    return order;
}

Resize resize_counts(const CountHistogram& current, double mu, double sigma, std::size_t new_size) {
    const std::size_t n = current.n_features();
    Resize r{allocate_counts(n, mu, sigma, new_size).counts, std::vector<std::ptrdiff_t>(n + 1, 0)};
    for (std::size_t m = 1; m <= n; ++m)
        r.deltas[m] = static_cast<std::ptrdiff_t>(r.target[m]) - static_cast<std::ptrdiff_t>(current[m]);
    return r;
}

CompetitionRecord apply_competition(Population& population, const CompetitionConfig& config,
                                    const Evaluator& evaluate, Rng& rng) {
    CompetitionRecord record;
    const std::size_t n_features = feature_count(population);
    if (config.award == 0 || config.penalty == 0 || population.tribes.size() < 2 || n_features == 0) {
        record.sizes = population.tribe_sizes();
        return record;
    }

    const auto order = rank_tribes(population);
    auto plan_resize = [&](std::size_t t, std::size_t new_size) -> std::optional<Resize> {
        const Tribe& tribe = population.tribes[t];
        Resize r = resize_counts(histogram(tribe, n_features), tribe.mu, tribe.sigma, new_size);
        if (!admissible(tribe, r, best_index(tribe.individuals))) return std::nullopt;
        return r;
    };

    std::optional<Resize> win_resize;
    for (auto t : order) {
        if ((win_resize = plan_resize(t, population.tribes[t].size() + config.award))) {
            record.winner = t;
            break;
        }
    }
    std::optional<Resize> lose_resize;
    for (auto it = order.rbegin(); record.winner && it != order.rend(); ++it) {
        const std::size_t t = *it;
        const std::size_t size = population.tribes[t].size();
        if (t == *record.winner || size < config.min_tribe_size + config.penalty) continue;
        if ((lose_resize = plan_resize(t, size - config.penalty))) {
            record.loser = t;
            break;
        }
    }
    if (!record.winner || !record.loser) {
        record.winner.reset();
        record.loser.reset();
        record.sizes = population.tribe_sizes();
        return record;
    }

    for (auto [t, r] : {std::pair{*record.winner, &*win_resize}, std::pair{*record.loser, &*lose_resize}}) {
        Tribe& tribe = population.tribes[t];
        shrink(tribe, *r, best_index(tribe.individuals));
        grow(tribe, *r, n_features, rng);
        evaluate(tribe.individuals);
    }
    record.sizes = population.tribe_sizes();
    return record;
}

} // namespace tcbga
